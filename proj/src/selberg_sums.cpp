#include "hecke/selberg_sums.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hecke/error.hpp"
#include "hecke/parallel.hpp"
#include "hecke/quadrature.hpp"

namespace hecke {

namespace {

constexpr std::size_t kChunks = 64;

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 0.25)) throw DomainError("theta must lie in [0, 1/4]");
}

// sum of per-chunk results in chunk order
template <class F>
double chunked_sum(std::size_t n, F&& body) {
  std::size_t chunks = std::min(kChunks, std::max<std::size_t>(n, 1));
  auto parts = parallel_map(chunks, [&](std::size_t c) {
    Compensated acc;
    std::size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
    for (std::size_t i = lo; i < hi; ++i) body(i, acc);
    return acc.value();
  });
  Compensated total;
  for (double v : parts) total.add(v);
  return total.value();
}

// Raw S_theta(X, gamma, N) without the envelope; X >= 1.
double s_theta_raw(double X, double gamma, std::uint64_t N, const std::vector<double>& alpha, const KFunction& K) {
  std::uint64_t n = static_cast<std::uint64_t>(std::floor(X));
  Compensated acc;
  for (std::uint64_t v = 1; v <= n; ++v) {
    if (alpha[v] == 0.0 || std::gcd(v, N) != 1) continue;
    double vd = static_cast<double>(v);
    acc.add(alpha[v] * K(v) * std::pow(vd, gamma - 1.0) * std::log(X / vd));
  }
  return acc.value();
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 0.25)) throw DomainError("gamma must lie in [0, 1/4]");
}

}  // namespace

void SumConfig::validate() const {
  if (!(X >= 1.0)) throw DomainError("X must be at least 1");
  if (X > kMaxSelbergX) {
    double n = std::floor(X);
    throw DomainError("X above " + std::to_string(static_cast<int>(kMaxSelbergX)) + " rejected: about " +
                      std::to_string(static_cast<long long>(n * n * n * n)) + " term evaluations");
  }
  check_theta(theta);
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
}

std::uint64_t SumConfig::cutoff() const { return static_cast<std::uint64_t>(std::floor(X)); }

SumWeights sum_weights(const SumConfig& cfg, const CoefficientTable& table) {
  cfg.validate();
  SumWeights w;
  w.n = cfg.cutoff();
  if (w.n > table.N) throw DomainError("coefficient table shorter than X");
  MollifierTable mt = mollifier_weights(alpha_coefficients(table, w.n), cfg.X);
  w.beta = mt.beta;
  std::uint64_t n2 = w.n * w.n;
  double s = 1.0 - cfg.theta;
  w.a.assign(n2 + 1, 0.0);
  std::vector<Compensated> acc(n2 + 1);
  for (std::uint64_t v1 = 1; v1 <= w.n; ++v1) {
    if (w.beta[v1] == 0.0) continue;
    double f1 = w.beta[v1] / std::pow(static_cast<double>(v1), s);
    for (std::uint64_t v4 = 1; v4 <= w.n; ++v4) {
      if (w.beta[v4] == 0.0) continue;
      acc[v1 * v4].add(f1 * w.beta[v4] / static_cast<double>(v4));
    }
  }
  for (std::uint64_t P = 1; P <= n2; ++P) {
    w.a[P] = acc[P].value();
    if (w.a[P] != 0.0) w.support.push_back(static_cast<std::uint32_t>(P));
  }
  Sieve sv(std::max<std::uint64_t>(n2, 2));
  KFunction K(table, sv, s, cfg.tol);
  K.precompute(n2);
  // only m built from primes <= n are ever read; the rest stay NaN
  w.K.assign(n2 + 1, std::nan(""));
  for (std::uint64_t m = 1; m <= n2; ++m) {
    std::uint64_t r = m, big = 1;
    while (r > 1) {
      big = std::max<std::uint64_t>(big, sv.smallest_factor(r));
      r /= sv.smallest_factor(r);
    }
    if (big <= w.n) w.K[m] = K(m);
  }
  return w;
}

double selberg_sum_brute(const SumConfig& cfg, const CoefficientTable& table) {
  SumWeights w = sum_weights(cfg, table);
  std::uint64_t n2 = w.n * w.n;
  double s = 1.0 - cfg.theta;
  std::vector<double> pw(n2 + 1, 0.0);
  for (std::uint64_t g = 1; g <= n2; ++g) pw[g] = std::pow(static_cast<double>(g), s);
  const auto& sup = w.support;
  return chunked_sum(sup.size(), [&](std::size_t i, Compensated& acc) {
    std::uint32_t P = sup[i];
    double aP = w.a[P];
    acc.add(aP * aP * pw[P]);
    for (std::size_t j = i + 1; j < sup.size(); ++j) {
      std::uint32_t Q = sup[j];
      std::uint32_t g = std::gcd(P, Q);
      acc.add(2.0 * aP * w.a[Q] * pw[g] * w.K[P / g] * w.K[Q / g]);
    }
  });
}

double selberg_sum_decomposed(const SumConfig& cfg, const CoefficientTable& table) {
  SumWeights w = sum_weights(cfg, table);
  std::uint64_t n2 = w.n * w.n;
  double s = 1.0 - cfg.theta;
  Sieve sv(std::max<std::uint64_t>(n2, 2));
  return chunked_sum(n2, [&](std::size_t idx, Compensated& acc) {
    std::uint64_t d = idx + 1;
    // squarefree divisors m of d from the distinct primes of d
    std::vector<std::uint64_t> sq{1};
    std::vector<int> mu{1};
    for (auto [p, e] : sv.factor(d)) {
      std::size_t k = sq.size();
      for (std::size_t i = 0; i < k; ++i) {
        sq.push_back(sq[i] * p);
        mu.push_back(-mu[i]);
      }
    }
    for (std::size_t i = 0; i < sq.size(); ++i) {
      std::uint64_t m = sq[i];
      Compensated g;
      for (std::uint64_t k = 1; k * d <= n2; ++k) {
        double aP = w.a[k * d];
        if (aP != 0.0) g.add(aP * w.K[k * m]);
      }
      double gv = g.value();
      if (gv == 0.0) continue;
      acc.add(mu[i] * std::pow(static_cast<double>(d / m), s) * gv * gv);
    }
  });
}

IdentityResidual mobius_K_identity(const std::array<std::uint64_t, 4>& nu, const KFunction& K, const Sieve& sieve) {
  for (auto v : nu)
    if (v < 1 || v > 10'000) throw DomainError("mobius_K_identity: entries must lie in [1, 10^4]");
  double s = K.s();
  std::uint64_t P = nu[0] * nu[3], Q = nu[1] * nu[2];
  IdentityResidual out;
  out.q = std::gcd(P, Q);
  out.lhs = std::pow(static_cast<double>(out.q), s) * K(P / out.q) * K(Q / out.q);
  Compensated rhs;
  for (std::uint64_t d : divisors(sieve.factor(out.q))) {
    std::vector<std::uint64_t> sq{1};
    std::vector<int> mu{1};
    for (auto [p, e] : sieve.factor(d)) {
      std::size_t k = sq.size();
      for (std::size_t i = 0; i < k; ++i) {
        sq.push_back(sq[i] * p);
        mu.push_back(-mu[i]);
      }
    }
    for (std::size_t i = 0; i < sq.size(); ++i) {
      std::uint64_t m = sq[i];
      rhs.add(mu[i] * std::pow(static_cast<double>(d / m), s) * K(P / d * m) * K(Q / d * m));
      ++out.terms;
    }
  }
  out.rhs = rhs.value();
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

WeightedSum s_theta_weighted(double X, double gamma, std::uint64_t N, double theta, const CoefficientTable& table,
                             double tol) {
  if (!(X >= 3.0)) throw DomainError("s_theta_weighted: X must be at least 3");
  check_theta(theta);
  check_gamma(gamma);
  if (N < 1) throw DomainError("s_theta_weighted: N must be at least 1");
  std::uint64_t n = static_cast<std::uint64_t>(std::floor(X));
  if (n > table.N) throw DomainError("coefficient table shorter than X");
  std::vector<double> alpha = alpha_coefficients(table, n);
  Sieve sv(std::max<std::uint64_t>(n, 2));
  KFunction K(table, sv, 1.0 - theta, tol);
  WeightedSum out;
  out.sum = s_theta_raw(X, gamma, N, alpha, K);
  double env = std::pow(X, gamma) * std::sqrt(std::log(X));
  std::uint64_t m = N;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    env *= (1.0 + 1.0 / p) * (1.0 + 1.0 / p);
  }
  if (m > 1) env *= (1.0 + 1.0 / m) * (1.0 + 1.0 / m);
  out.envelope = env;
  out.ratio = out.sum / env;
  return out;
}

SmoothingResidual smoothing_identity_check(double X, double A, double gamma, std::uint64_t N, double theta,
                                           const CoefficientTable& table, double tol) {
  if (!(A >= 1.0)) throw DomainError("smoothing_identity_check: A must be at least 1");
  if (!(std::sqrt(X) / A >= 1.0)) throw DomainError("smoothing_identity_check: sqrt(X)/A must be at least 1");
  if (!(X > 1.0)) throw DomainError("smoothing_identity_check: X must exceed 1");
  check_theta(theta);
  check_gamma(gamma);
  if (N < 1) throw DomainError("smoothing_identity_check: N must be at least 1");
  std::uint64_t n = static_cast<std::uint64_t>(std::floor(X / A));
  if (n > table.N) throw DomainError("coefficient table shorter than X/A");
  std::vector<double> alpha = alpha_coefficients(table, std::max<std::uint64_t>(n, 1));
  Sieve sv(std::max<std::uint64_t>(n, 2));
  KFunction K(table, sv, 1.0 - theta, tol);
  SmoothingResidual out;
  Compensated lhs;
  for (std::uint64_t v = 1; v <= n; ++v) {
    if (alpha[v] == 0.0 || std::gcd(v, N) != 1) continue;
    double vd = static_cast<double>(v);
    lhs.add(alpha[v] * K(v) * std::pow(vd, gamma - 1.0) * smoothing_weight(A * vd, X));
  }
  out.lhs = lhs.value();
  out.rhs = 2.0 / std::log(X) *
            (s_theta_raw(X / A, gamma, N, alpha, K) - s_theta_raw(std::sqrt(X) / A, gamma, N, alpha, K));
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

std::vector<BoundRow> bound_shape(double X, const std::vector<double>& thetas, const CoefficientTable& table,
                                  double tol) {
  std::vector<BoundRow> rows;
  for (double th : thetas) {
    SumConfig cfg{X, th, tol};
    BoundRow r;
    r.X = X;
    r.theta = th;
    r.S = selberg_sum_decomposed(cfg, table);
    r.ratio = r.S * std::log(X) / std::pow(X, 2.0 * th);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hecke
