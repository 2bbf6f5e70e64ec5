#include "hecke/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

struct ThetaRows {
  const Form& q;
  std::int64_t D;

  std::int64_t value(std::int64_t x, std::int64_t y) const { return q.a * x * x + q.b * x * y + q.c * y * y; }

  // integer x with Q(x, y) <= N, as [L, R]; false when empty
  bool range(std::int64_t N, std::int64_t y, std::int64_t& L, std::int64_t& R) const {
    std::int64_t disc = 4 * q.a * N - D * y * y;
    if (disc < 0) return false;
    double sq = std::sqrt(static_cast<double>(disc));
    double lo = (-static_cast<double>(q.b * y) - sq) / (2.0 * q.a);
    double hi = (-static_cast<double>(q.b * y) + sq) / (2.0 * q.a);
    L = static_cast<std::int64_t>(std::ceil(lo));
    R = static_cast<std::int64_t>(std::floor(hi));
    while (value(L - 1, y) <= N) --L;
    while (L <= R && value(L, y) > N) ++L;
    while (value(R + 1, y) <= N) ++R;
    while (R >= L && value(R, y) > N) --R;
    return L <= R;
  }

  template <class F>
  void visit(std::uint64_t N0, std::uint64_t N1, F&& f) const {
    const std::int64_t n0 = static_cast<std::int64_t>(N0), n1 = static_cast<std::int64_t>(N1);
    std::int64_t ymax = static_cast<std::int64_t>(std::sqrt(4.0 * q.a * n1 / D)) + 1;
    for (std::int64_t y = -ymax; y <= ymax; ++y) {
      std::int64_t L1, R1;
      if (!range(n1, y, L1, R1)) continue;
      std::int64_t L0, R0;
      bool inner = range(n0, y, L0, R0);
      if (!inner) {
        for (std::int64_t x = L1; x <= R1; ++x) f(value(x, y));
      } else {
        for (std::int64_t x = L1; x < L0; ++x) f(value(x, y));
        for (std::int64_t x = R0 + 1; x <= R1; ++x) f(value(x, y));
      }
    }
  }
};

void check_budget(std::uint64_t N, std::uint64_t budget) {
  if (N > kMaxCoefficientN) {
    std::ostringstream os;
    os << "coefficient table length " << N << " exceeds the limit " << kMaxCoefficientN;
    throw DomainError(os.str());
  }
  std::uint64_t need = coefficient_bytes(N);
  if (need > budget) {
    std::ostringstream os;
    os << "coefficient table of length " << N << " needs " << need << " bytes, budget is " << budget;
    throw DomainError(os.str());
  }
}

void append_real(CoefficientTable& t, const std::vector<std::complex<double>>& acc, std::uint64_t N0) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (std::abs(acc[i].imag()) >= 1e-10) {
      std::ostringstream os;
      os << "imaginary residue " << acc[i].imag() << " at n=" << (N0 + 1 + i) << " for D=" << t.D
         << " character " << t.char_index;
      throw InternalError(os.str());
    }
    t.r.push_back(acc[i].real());
  }
}

bool is_principal(const HeckeCharacter& psi) {
  for (auto a : psi.angle)
    if (a != 0) return false;
  return true;
}

void accumulate_all(const FieldData& field, const HeckeCharacter& psi, std::uint64_t N0, std::uint64_t N1,
                    std::vector<std::complex<double>>& acc) {
  const double inv_w = 1.0 / field.w;
  for (std::size_t i = 0; i < field.h; ++i) theta_accumulate(field.forms[i], N0, N1, psi.values[i] * inv_w, acc);
}

}  // namespace

namespace {

void require_hecke(const CoefficientTable& t, const FieldData& field, const HeckeCharacter& psi) {
  HeckeReport rep = verify_hecke(t, field, is_principal(psi));
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    std::ostringstream os;
    os << "coefficient table fails " << v.kind << " at n=" << v.n << " (expected " << v.expected << ", got "
       << v.got << ")";
    throw InternalError(os.str());
  }
}

}  // namespace

std::uint64_t coefficient_bytes(std::uint64_t N) { return (N + 1) * (sizeof(std::complex<double>) + sizeof(double)); }

std::vector<std::uint32_t> theta_counts(const Form& q, std::uint64_t N) {
  if (q.a <= 0 || q.discriminant() >= 0) throw DomainError("theta_counts: form is not positive definite");
  check_budget(N, kCoefficientMemoryBudget);
  std::vector<std::uint32_t> R(N + 1, 0);
  ThetaRows rows{q, -q.discriminant()};
  R[0] = 1;
  rows.visit(0, N, [&](std::int64_t v) { ++R[static_cast<std::size_t>(v)]; });
  return R;
}

void theta_accumulate(const Form& q, std::uint64_t N0, std::uint64_t N1, std::complex<double> weight,
                      std::vector<std::complex<double>>& acc) {
  if (q.a <= 0 || q.discriminant() >= 0) throw DomainError("theta_accumulate: form is not positive definite");
  if (acc.size() < N1 - N0) throw DomainError("theta_accumulate: accumulator too short");
  ThetaRows rows{q, -q.discriminant()};
  rows.visit(N0, N1, [&](std::int64_t v) { acc[static_cast<std::size_t>(v) - N0 - 1] += weight; });
}

CoefficientTable r_coefficients(const FieldData& field, const HeckeCharacter& psi, std::size_t char_index,
                                std::uint64_t N, std::uint64_t memory_budget) {
  if (N < 1) throw DomainError("r_coefficients: N must be at least 1");
  check_budget(N, memory_budget);
  CoefficientTable t;
  t.D = field.D;
  t.char_index = char_index;
  t.r.reserve(N + 1);
  t.r.push_back(0.0);
  std::vector<std::complex<double>> acc(N, 0.0);
  accumulate_all(field, psi, 0, N, acc);
  append_real(t, acc, 0);
  t.N = N;
  require_hecke(t, field, psi);
  return t;
}

void extend_coefficients(CoefficientTable& table, const FieldData& field, const HeckeCharacter& psi,
                         std::uint64_t N) {
  if (table.D != field.D) throw DomainError("extend_coefficients: table belongs to a different discriminant");
  if (N <= table.N) return;
  check_budget(N, kCoefficientMemoryBudget);
  std::vector<std::complex<double>> acc(N - table.N, 0.0);
  accumulate_all(field, psi, table.N, N, acc);
  append_real(table, acc, table.N);
  table.N = N;
  require_hecke(table, field, psi);
}

HeckeReport verify_hecke(const CoefficientTable& t, const FieldData& field, bool principal, double tol) {
  HeckeReport rep;
  const std::size_t N = t.N;
  if (t.r.size() != N + 1) throw DomainError("verify_hecke: table size does not match N");
  Sieve sv(std::max<std::size_t>(N, 2));
  auto close = [&](double e, double g) { return std::abs(e - g) <= tol * (1.0 + std::abs(e)); };
  auto flag = [&](std::size_t n, double e, double g, const char* kind) { rep.violations.push_back({n, e, g, kind}); };
  if (N >= 1 && !close(1.0, t.r[1])) flag(1, 1.0, t.r[1], "unit");
  std::vector<double> divsum;
  if (principal) {
    divsum.assign(N + 1, 0.0);
    for (std::size_t d = 1; d <= N; ++d) {
      int c = kronecker_chi(field, d);
      if (c == 0) continue;
      for (std::size_t k = d; k <= N; k += d) divsum[k] += c;
    }
  }
  for (std::size_t n = 1; n <= N; ++n) {
    ++rep.checked;
    if (n >= 2) {
      std::size_t p = sv.smallest_factor(n);
      std::size_t pk = 1;
      int k = 0;
      while ((n / pk) % p == 0) {
        pk *= p;
        ++k;
      }
      std::size_t m = n / pk;
      if (m > 1) {
        double e = t.r[pk] * t.r[m];
        if (!close(e, t.r[n])) flag(n, e, t.r[n], "multiplicative");
      } else if (k >= 2) {
        double e = t.r[p] * t.r[pk / p] - kronecker_chi(field, p) * t.r[pk / p / p];
        if (!close(e, t.r[n])) flag(n, e, t.r[n], "prime-power");
      }
    }
    double tau = sv.tau(n);
    if (std::abs(t.r[n]) > tau * (1.0 + tol)) flag(n, tau, t.r[n], "divisor-bound");
    if (principal && !close(divsum[n], t.r[n])) flag(n, divsum[n], t.r[n], "divisor-sum");
  }
  return rep;
}

std::vector<double> alpha_prime_power(double rp, int chi_p, int kmax) {
  using C = std::complex<double>;
  C disc = std::sqrt(C(rp * rp - 4.0 * chi_p, 0.0));
  C g = 0.5 * (rp + disc), d = 0.5 * (rp - disc);
  auto series = [&](C root) {
    std::vector<C> c(kmax + 1);
    double binom = 1.0;
    C pw = 1.0;
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) {
        binom *= (0.5 - (k - 1)) / k;
        pw *= -root;
      }
      c[k] = binom * pw;
    }
    return c;
  };
  std::vector<C> a = series(g), b = series(d);
  std::vector<double> out(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    C s = 0.0;
    for (int i = 0; i <= k; ++i) s += a[i] * b[k - i];
    out[k] = s.real();
  }
  return out;
}

std::vector<double> alpha_coefficients(const CoefficientTable& table, std::uint64_t X) {
  if (X < 1) throw DomainError("alpha_coefficients: X must be at least 1");
  if (X > table.N) throw DomainError("alpha_coefficients: table shorter than X");
  Sieve sv(std::max<std::uint64_t>(X, 2));
  std::vector<double> alpha(X + 1, 0.0);
  alpha[1] = 1.0;
  std::vector<std::vector<double>> local(X + 1);
  for (std::uint32_t p : sv.primes()) {
    if (p > X) break;
    int kmax = 0;
    for (std::uint64_t q = p; q <= X; q *= p) ++kmax;
    local[p] = alpha_prime_power(table.r[p], kronecker(-static_cast<std::int64_t>(table.D), p), kmax);
  }
  for (std::uint64_t n = 2; n <= X; ++n) {
    std::uint64_t p = sv.smallest_factor(n), m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    alpha[n] = local[p][k] * alpha[m];
  }
  return alpha;
}

double smoothing_weight(double nu, double X) {
  if (nu * nu <= X) return 1.0;
  if (nu > X) return 0.0;
  return 2.0 * std::log(X / nu) / std::log(X);
}

MollifierTable mollifier_weights(const std::vector<double>& alpha, double X) {
  if (!(X >= 1.0)) throw DomainError("mollifier_weights: X must be at least 1");
  std::size_t n = static_cast<std::size_t>(std::floor(X));
  if (alpha.size() < n + 1) throw DomainError("mollifier_weights: alpha table shorter than X");
  MollifierTable m;
  m.X = X;
  m.logX = std::log(X);
  m.alpha.assign(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(n + 1));
  m.beta.assign(n + 1, 0.0);
  for (std::size_t v = 1; v <= n; ++v) m.beta[v] = m.alpha[v] * smoothing_weight(static_cast<double>(v), X);
  return m;
}

std::vector<double> prime_power_coefficients(double rp, int chi_p, int kmax) {
  std::vector<double> r(kmax + 1, 0.0);
  r[0] = 1.0;
  if (kmax >= 1) r[1] = rp;
  for (int k = 2; k <= kmax; ++k) r[k] = rp * r[k - 1] - chi_p * r[k - 2];
  return r;
}

int k_series_terms(double q, int a, double tol) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("k_series_terms: ratio outside (0,1)");
  double qk = q;  // q^{K+1}
  for (int K = 0; K < 100000; ++K) {
    double t = (K + 2.0) * (K + a + 2.0) * qk;
    double rho = q * (K + 3.0) * (K + a + 3.0) / ((K + 2.0) * (K + a + 2.0));
    if (rho < 1.0 && t / (1.0 - rho) < tol) return K;
    qk *= q;
  }
  throw ConvergenceError("k_series_terms: tail bound did not reach tolerance");
}

template <class S>
S k_local(std::uint64_t p, int a, S s, double rp, int chi_p, double tol) {
  double sigma = std::real(s);
  double q = std::pow(static_cast<double>(p), -sigma);
  int Kn = k_series_terms(q, a, tol);
  int Kd = k_series_terms(q, 0, tol);
  std::vector<double> r = prime_power_coefficients(rp, chi_p, std::max(Kn + a, Kd));
  S ps = std::pow(S(static_cast<double>(p)), -s);
  S num = 0.0, den = 0.0, pw = 1.0;
  for (int k = 0; k <= std::max(Kn, Kd); ++k) {
    if (k <= Kn) num += r[a + k] * r[k] * pw;
    if (k <= Kd) den += r[k] * r[k] * pw;
    pw *= ps;
  }
  return num / den;
}

template double k_local<double>(std::uint64_t, int, double, double, int, double);
template std::complex<double> k_local<std::complex<double>>(std::uint64_t, int, std::complex<double>, double, int,
                                                           double);

namespace {

template <class S>
S k_direct(std::uint64_t m, S s, const CoefficientTable& table, const Sieve& sieve, double tol) {
  if (std::real(s) < 0.75) throw DomainError("K(m,s) requires Re s >= 3/4");
  if (m == 0) throw DomainError("K(m,s) requires m >= 1");
  S out = 1.0;
  for (auto [p, a] : sieve.factor(m)) {
    if (p > table.N) throw DomainError("K(m,s): prime factor beyond coefficient table");
    out *= k_local<S>(p, a, s, table.r[p], kronecker(-static_cast<std::int64_t>(table.D), p), tol);
  }
  return out;
}

}  // namespace

double k_function(std::uint64_t m, double s, const CoefficientTable& table, const Sieve& sieve, double tol) {
  return k_direct<double>(m, s, table, sieve, tol);
}

std::complex<double> k_function(std::uint64_t m, std::complex<double> s, const CoefficientTable& table,
                                const Sieve& sieve, double tol) {
  return k_direct<std::complex<double>>(m, s, table, sieve, tol);
}

KFunction::KFunction(const CoefficientTable& table, const Sieve& sieve, double s, double tol)
    : table_(&table), sieve_(&sieve), s_(s), tol_(tol) {
  if (s < 0.75) throw DomainError("K(m,s) requires Re s >= 3/4");
}

double KFunction::local(std::uint64_t p, int a) const {
  std::uint64_t key = ipow(p, a);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (p > table_->N) throw DomainError("K(m,s): prime factor beyond coefficient table");
  return k_local<double>(p, a, s_, table_->r[p], kronecker(-static_cast<std::int64_t>(table_->D), p), tol_);
}

double KFunction::operator()(std::uint64_t m) const {
  if (m == 0) throw DomainError("K(m,s) requires m >= 1");
  double out = 1.0;
  if (m <= sieve_->limit()) {
    while (m > 1) {
      std::uint64_t p = sieve_->smallest_factor(m);
      int a = 0;
      while (m % p == 0) {
        m /= p;
        ++a;
      }
      out *= local(p, a);
      if (out == 0.0) return 0.0;
    }
    return out;
  }
  for (auto [p, a] : sieve_->factor(m)) out *= local(p, a);
  return out;
}

void KFunction::precompute(std::uint64_t limit) {
  for (std::uint32_t p : sieve_->primes()) {
    if (p > limit || p > table_->N) break;
    std::uint64_t pa = p;
    for (int a = 1; pa <= limit; ++a, pa *= p) {
      if (!memo_.count(pa)) memo_[pa] = local(p, a);
      if (pa > limit / p) break;
    }
  }
}

std::vector<double> b_coefficients(const std::vector<double>& alpha) {
  std::size_t N = alpha.size() - 1;
  std::vector<double> absa(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) absa[i] = std::abs(alpha[i]);
  return dirichlet_convolve(absa, absa, N);
}

std::vector<double> big_b_coefficients(const CoefficientTable& table, const Sieve& sieve, std::size_t N) {
  if (N > table.N || N > sieve.limit()) throw DomainError("big_b_coefficients: N beyond table or sieve");
  std::vector<double> B(N + 1, 0.0);
  if (N >= 1) B[1] = 1.0;
  for (std::size_t n = 2; n <= N; ++n) {
    std::size_t p = sieve.smallest_factor(n), m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    double local = k == 1 ? std::abs(table.r[p]) : static_cast<double>(k + 1);
    B[n] = local * B[m];
  }
  return B;
}

}  // namespace hecke
