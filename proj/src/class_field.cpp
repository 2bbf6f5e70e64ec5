#include "hecke/class_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "hecke/arith.hpp"
#include "hecke/error.hpp"

namespace hecke {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// returns g = gcd(a,b) >= 0 and x,y with a x + b y = g
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t q = floor_div(a, b);
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

Form normalize(Form f) {
  // bring b into (-a, a]
  std::int64_t two_a = 2 * f.a;
  std::int64_t r = floor_div(f.a - f.b, two_a);
  std::int64_t D = 4 * f.a * f.c - f.b * f.b;
  f.b += r * two_a;
  f.c = (f.b * f.b + D) / (4 * f.a);
  return f;
}

}  // namespace

bool Form::is_reduced() const {
  if (a <= 0) return false;
  if (!(-a < b && b <= a && a <= c)) return false;
  if ((a == c || a == std::abs(b)) && b < 0) return false;
  return true;
}

Form reduce(Form f) {
  if (f.a <= 0 || f.discriminant() >= 0) throw DomainError("reduce: form is not positive definite");
  f = normalize(f);
  while (f.a > f.c || (f.a == f.c && f.b < 0)) {
    f = Form{f.c, -f.b, f.a};
    f = normalize(f);
  }
  return f;
}

std::string discriminant_problem(std::int64_t D) {
  if (D <= 0) return "discriminant -D must be negative (D > 0)";
  if (D < 3) return "D must be at least 3";
  if (D > 1000000) return "D exceeds the supported bound 10^6";
  std::int64_t r = D % 4;
  if (r == 1 || r == 2) return "-D must be congruent to 0 or 1 mod 4";
  if (r == 3) {
    if (!is_squarefree(static_cast<std::uint64_t>(D))) return "D = 3 mod 4 but D is not squarefree";
    return "";
  }
  std::int64_t m = D / 4;
  if (m % 4 != 1 && m % 4 != 2) return "D = 4m requires m = 1 or 2 mod 4";
  if (!is_squarefree(static_cast<std::uint64_t>(m))) return "D = 4m requires m squarefree";
  return "";
}

std::vector<Form> reduced_forms(std::int64_t D) {
  std::string why = discriminant_problem(D);
  if (!why.empty()) throw DomainError("not a fundamental discriminant: " + why);
  std::vector<Form> out;
  for (std::int64_t a = 1; 3 * a * a <= D; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      std::int64_t num = b * b + D;
      if (num % (4 * a) != 0) continue;
      Form f{a, b, num / (4 * a)};
      if (f.is_reduced()) out.push_back(f);
    }
  }
  std::sort(out.begin(), out.end(), [](const Form& x, const Form& y) {
    if (x.a != y.a) return x.a < y.a;
    if (std::abs(x.b) != std::abs(y.b)) return std::abs(x.b) < std::abs(y.b);
    return x.b > y.b;
  });
  return out;
}

Form compose(const Form& f1, const Form& f2) {
  if (f1.discriminant() != f2.discriminant())
    throw DomainError("compose: forms have different discriminants");
  const std::int64_t disc = f1.discriminant();
  Form p = f1, q = f2;
  if (p.a > q.a) std::swap(p, q);
  std::int64_t s = (p.b + q.b) / 2;
  std::int64_t n = q.b - s;
  std::int64_t y1, d;
  if (q.a % p.a == 0) {
    y1 = 0;
    d = p.a;
  } else {
    std::int64_t u, v;
    d = ext_gcd(q.a, p.a, u, v);
    y1 = u;
  }
  std::int64_t x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    d1 = ext_gcd(s, d, x2, y2);
    y2 = -y2;
  }
  std::int64_t v1 = p.a / d1, v2 = q.a / d1;
  std::int64_t r = mod_pos(y1 * y2 * n - x2 * q.c, v1);
  Form out;
  out.a = v1 * v2;
  out.b = q.b + 2 * v2 * r;
  std::int64_t num = out.b * out.b - disc;
  if (num % (4 * out.a) != 0) throw InternalError("compose: non-integral third coefficient");
  out.c = num / (4 * out.a);
  return reduce(out);
}

Form compose(const Form& f1, const Form& f2, const FieldData& field) {
  const std::int64_t disc = -static_cast<std::int64_t>(field.D);
  if (f1.discriminant() != disc || f2.discriminant() != disc)
    throw DomainError("compose: form discriminant does not match the field");
  return compose(f1, f2);
}

std::size_t FieldData::index_of(const Form& f) const {
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (forms[i] == f) return i;
  throw DomainError("form is not a reduced form of this discriminant");
}

std::size_t FieldData::inverse(std::size_t i) const {
  for (std::size_t j = 0; j < h; ++j)
    if (mul(i, j) == 0) return j;
  throw InternalError("element without inverse");
}

std::size_t FieldData::power(std::size_t i, std::uint64_t k) const {
  std::size_t r = 0;
  while (k-- > 0) r = mul(r, i);
  return r;
}

std::size_t FieldData::order(std::size_t i) const {
  std::size_t x = i, k = 1;
  while (x != 0) {
    x = mul(x, i);
    ++k;
  }
  return k;
}

namespace {

std::vector<std::uint64_t> compute_invariant_factors(const FieldData& F) {
  std::vector<std::size_t> ord(F.h);
  for (std::size_t i = 0; i < F.h; ++i) ord[i] = F.order(i);
  Sieve sv(std::max<std::uint64_t>(F.h, 2));
  // for each prime p | h, cyclic factor exponents from element counts
  std::vector<std::vector<int>> pparts;  // exponents, descending
  std::vector<std::uint64_t> ps;
  for (auto [p, e] : sv.factor(std::max<std::uint64_t>(F.h, 1))) {
    std::vector<std::uint64_t> cnt;  // cnt[k] = #{x : p^k x = 0}
    cnt.push_back(1);
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < F.h; ++i)
        if (pk % ord[i] == 0) ++c;
      cnt.push_back(c);
    }
    // number of cyclic factors with order >= p^k is log_p(cnt[k]/cnt[k-1])
    std::vector<int> ge(e + 2, 0);
    for (int k = 1; k <= e; ++k) {
      std::uint64_t ratio = cnt[k] / cnt[k - 1];
      int l = 0;
      while (ratio > 1) {
        ratio /= p;
        ++l;
      }
      ge[k] = l;
    }
    std::vector<int> exps;
    for (int k = 1; k <= e; ++k)
      for (int c = 0; c < ge[k] - ge[k + 1]; ++c) exps.push_back(k);
    std::sort(exps.rbegin(), exps.rend());
    pparts.push_back(exps);
    ps.push_back(p);
  }
  std::size_t rank = 0;
  for (auto& v : pparts) rank = std::max(rank, v.size());
  std::vector<std::uint64_t> inv(rank, 1);
  // largest factor last
  for (std::size_t q = 0; q < ps.size(); ++q)
    for (std::size_t k = 0; k < pparts[q].size(); ++k) inv[rank - 1 - k] *= ipow(ps[q], pparts[q][k]);
  return inv;
}

void verify_group(const FieldData& F) {
  const std::size_t h = F.h;
  for (std::size_t i = 0; i < h; ++i) {
    if (F.mul(0, i) != i || F.mul(i, 0) != i) throw InternalError("composition: principal form is not the identity");
    std::vector<char> row(h, 0), col(h, 0);
    for (std::size_t j = 0; j < h; ++j) {
      row[F.mul(i, j)] = 1;
      col[F.mul(j, i)] = 1;
      if (F.mul(i, j) != F.mul(j, i)) throw InternalError("composition: table is not commutative");
    }
    for (std::size_t j = 0; j < h; ++j)
      if (!row[j] || !col[j]) throw InternalError("composition: table row or column is not a permutation");
  }
  auto assoc = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c))) throw InternalError("composition: table is not associative");
  };
  if (h <= 64) {
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = 0; b < h; ++b)
        for (std::size_t c = 0; c < h; ++c) assoc(a, b, c);
  } else {
    std::mt19937_64 rng(h);
    for (int k = 0; k < 4096; ++k) assoc(rng() % h, rng() % h, rng() % h);
  }
}

}  // namespace

FieldData build_field(std::int64_t D) {
  FieldData F;
  F.forms = reduced_forms(D);
  F.D = static_cast<std::uint64_t>(D);
  F.h = F.forms.size();
  F.w = D == 3 ? 6 : (D == 4 ? 4 : 2);
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint32_t> idx;
  for (std::size_t i = 0; i < F.h; ++i) idx[{F.forms[i].a, F.forms[i].b}] = static_cast<std::uint32_t>(i);
  F.table.assign(F.h * F.h, 0);
  for (std::size_t i = 0; i < F.h; ++i)
    for (std::size_t j = i; j < F.h; ++j) {
      Form g = compose(F.forms[i], F.forms[j]);
      auto it = idx.find({g.a, g.b});
      if (it == idx.end() || !(F.forms[it->second] == g)) {
        std::ostringstream os;
        os << "composition closure failure for D=" << D << " at (" << i << "," << j << ")";
        throw InternalError(os.str());
      }
      F.table[i * F.h + j] = it->second;
      F.table[j * F.h + i] = it->second;
    }
  verify_group(F);
  F.invariant_factors = compute_invariant_factors(F);
  return F;
}

std::vector<HeckeCharacter> characters(const FieldData& F) {
  const std::size_t h = F.h;
  const std::int64_t H = static_cast<std::int64_t>(h);
  std::vector<char> in_sub(h, 0);
  std::vector<std::size_t> sub{0};
  in_sub[0] = 1;
  std::vector<std::vector<std::int64_t>> chars{std::vector<std::int64_t>(h, -1)};
  chars[0][0] = 0;
  for (std::size_t g = 1; g < h; ++g) {
    if (in_sub[g]) continue;
    std::size_t k = 1, gk = g;
    while (!in_sub[gk]) {
      gk = F.mul(gk, g);
      ++k;
    }
    // elements x * g^i, i < k, for x in the current subgroup
    std::vector<std::size_t> gi(k);
    gi[0] = 0;
    for (std::size_t i = 1; i < k; ++i) gi[i] = F.mul(gi[i - 1], g);
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& chi : chars) {
      std::int64_t A = chi[gk];
      for (std::size_t j = 0; j < k; ++j) {
        std::int64_t num = A + static_cast<std::int64_t>(j) * H;
        if (num % static_cast<std::int64_t>(k) != 0) throw InternalError("character extension is not integral");
        std::int64_t ag = mod_pos(num / static_cast<std::int64_t>(k), H);
        std::vector<std::int64_t> ext = chi;
        for (std::size_t x : sub)
          for (std::size_t i = 1; i < k; ++i)
            ext[F.mul(x, gi[i])] = mod_pos(chi[x] + static_cast<std::int64_t>(i) * ag, H);
        next.push_back(std::move(ext));
      }
    }
    chars = std::move(next);
    std::vector<std::size_t> nsub;
    for (std::size_t x : sub)
      for (std::size_t i = 0; i < k; ++i) nsub.push_back(F.mul(x, gi[i]));
    sub = std::move(nsub);
    for (std::size_t x : sub) in_sub[x] = 1;
  }
  if (chars.size() != h || sub.size() != h) throw InternalError("character construction did not cover the group");
  std::sort(chars.begin(), chars.end());
  std::vector<HeckeCharacter> out(h);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t c = 0; c < h; ++c) {
    HeckeCharacter& X = out[c];
    X.angle = chars[c];
    X.denom = h;
    X.values.resize(h);
    X.is_complex = false;
    for (std::size_t i = 0; i < h; ++i) {
      std::int64_t a = X.angle[i];
      if ((2 * a) % H != 0) X.is_complex = true;
      if (a == 0)
        X.values[i] = 1.0;
      else if (2 * a == H)
        X.values[i] = -1.0;
      else
        X.values[i] = std::polar(1.0, two_pi * static_cast<double>(a) / static_cast<double>(h));
    }
    X.n_psi = X.is_complex ? 1 : 2;
    std::vector<std::int64_t> conj(h);
    for (std::size_t i = 0; i < h; ++i) conj[i] = mod_pos(-X.angle[i], H);
    auto it = std::lower_bound(chars.begin(), chars.end(), conj);
    if (it == chars.end() || *it != conj) throw InternalError("conjugate character missing");
    X.conjugate_index = static_cast<std::size_t>(it - chars.begin());
    X.representative = c <= X.conjugate_index;
  }
  return out;
}

int kronecker(std::int64_t a, std::uint64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  static const int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
  if ((a % 2 == 0) && (n % 2 == 0)) return 0;
  int k = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) k = tab2[mod_pos(a, 8)];
  // n odd now; Jacobi symbol (a/n)
  std::int64_t aa = mod_pos(a, static_cast<std::int64_t>(n));
  std::int64_t b = static_cast<std::int64_t>(n);
  while (aa != 0) {
    v = 0;
    while (aa % 2 == 0) {
      aa /= 2;
      ++v;
    }
    if (v % 2 == 1) k *= tab2[b & 7];
    if ((aa & b & 2) != 0) k = -k;
    std::int64_t r = b % aa;
    b = aa;
    aa = r;
  }
  return b == 1 ? k : 0;
}

int kronecker_chi(const FieldData& field, std::uint64_t n) {
  if (n == 0) throw DomainError("kronecker_chi: n must be positive");
  return kronecker(-static_cast<std::int64_t>(field.D), n);
}

}  // namespace hecke
