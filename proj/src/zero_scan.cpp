#include "hecke/zero_scan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hecke/coefficient_cache.hpp"
#include "hecke/error.hpp"
#include "hecke/parallel.hpp"

namespace hecke {

namespace {

const double kPi = std::acos(-1.0);

}  // namespace

CombinationSpec parse_combination(const std::string& text) {
  CombinationSpec spec;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    try {
      if (colon == std::string::npos) {
        spec.chars.push_back(std::stoul(item));
        spec.coeffs.push_back(1.0);
      } else {
        spec.chars.push_back(std::stoul(item.substr(0, colon)));
        spec.coeffs.push_back(std::stod(item.substr(colon + 1)));
      }
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse combination term '" + item + "'");
    }
  }
  if (spec.chars.empty()) throw DomainError("combination is empty");
  return spec;
}

void validate_combination(const CombinationSpec& spec, const std::vector<HeckeCharacter>& chars) {
  if (spec.chars.empty()) throw DomainError("combination needs at least one term");
  if (spec.chars.size() != spec.coeffs.size()) throw DomainError("combination: characters and coefficients differ");
  for (std::size_t i = 0; i < spec.chars.size(); ++i) {
    if (spec.chars[i] >= chars.size()) throw DomainError("combination: character index out of range");
    if (!(spec.coeffs[i] != 0.0) || !std::isfinite(spec.coeffs[i]))
      throw DomainError("combination: coefficients must be finite and nonzero");
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.chars[j] == spec.chars[i] || chars[spec.chars[i]].conjugate_index == spec.chars[j]) {
        std::ostringstream os;
        os << "combination: characters " << spec.chars[j] << " and " << spec.chars[i] << " give the same L-function";
        throw DomainError(os.str());
      }
    }
  }
}

Combination::Combination(const FieldData& field, const std::vector<HeckeCharacter>& chars, CombinationSpec spec,
                         double t_max, double sigma_lo, double sigma_hi, EvalOptions opt,
                         const std::string& cache_dir)
    : field_(&field), spec_(std::move(spec)) {
  validate_combination(spec_, chars);
  std::size_t N = required_terms_range(field.D, opt, sigma_lo, sigma_hi, t_max);
  std::vector<bool> principal;
  for (std::size_t k : spec_.chars) {
    const HeckeCharacter& psi = chars[k];
    bool p = std::all_of(psi.angle.begin(), psi.angle.end(), [](std::int64_t a) { return a == 0; });
    principal.push_back(p);
    principal_ = principal_ || p;
    if (cache_dir.empty())
      tables_.push_back(r_coefficients(field, psi, k, N));
    else
      tables_.push_back(cached_coefficients(field, psi, k, N, cache_dir));
  }
  std::vector<const CoefficientTable*> ptrs;
  for (const auto& t : tables_) ptrs.push_back(&t);
  ctx_ = std::make_unique<EvalContext>(field, ptrs, principal, opt);
}

cplx Combination::lambda_combination(cplx s) const {
  std::vector<cplx> v = ctx_->lambda_scaled(s);
  cplx out = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) out += spec_.coeffs[j] * v[j];
  return out;
}

double Combination::frak_F(double t) const {
  cplx v = lambda_combination(cplx(0.5, t));
  if (std::abs(v.imag()) > static_cast<double>(m()) * tol()) {
    std::ostringstream os;
    os << "frak_F: imaginary residue " << v.imag() << " at t=" << t << " exceeds m*tol";
    throw InternalError(os.str());
  }
  return v.real();
}

double Combination::frak_F_fast(double t) const {
  std::vector<double> v = ctx_->critical_scaled(t);
  double out = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) out += spec_.coeffs[j] * v[j];
  return out;
}

double Combination::residue(double t) const { return std::abs(lambda_combination(cplx(0.5, t)).imag()); }

double default_step(double t1, std::uint64_t D) {
  return 1.0 / (4.0 * std::log((std::abs(t1) + 3.0) * std::sqrt(static_cast<double>(D))));
}

namespace {

struct Sample {
  double t = 0.0;
  double f = 0.0;
  bool ok = true;
  int perturbed = 0;
  std::string error;
};

int sign_of(double f, double noise) { return f > noise ? 1 : (f < -noise ? -1 : 0); }

}  // namespace

ScanResult scan_sign_changes(const Combination& c, double t0, double t1, double step, double refine_tol) {
  if (!(step > 0.0)) throw DomainError("scan: step must be positive");
  if (!(refine_tol > 0.0 && refine_tol < step)) throw DomainError("scan: refine_tol must lie in (0, step)");
  if (!(t1 > t0)) throw DomainError("scan: empty interval");
  ScanResult res;
  res.t0 = t0;
  res.t1 = t1;
  res.step = step;
  const double noise = 5.0 * static_cast<double>(c.m()) * c.tol();
  const std::size_t n = static_cast<std::size_t>(std::ceil((t1 - t0) / step - 1e-9)) + 1;
  std::vector<Sample> grid = parallel_map(n, [&](std::size_t i) {
    Sample s;
    s.t = i + 1 == n ? t1 : t0 + static_cast<double>(i) * step;
    try {
      s.f = c.frak_F(s.t);
      // values inside the noise band carry no sign; nudge the point inside its own cell
      for (int k = 1; k <= 3 && std::abs(s.f) <= noise; ++k) {
        double dt = step * 0.1 * k * (i + 1 == n ? -1.0 : 1.0);
        s.t = (i + 1 == n ? t1 : t0 + static_cast<double>(i) * step) + dt;
        s.f = c.frak_F(s.t);
        s.perturbed = k;
      }
    } catch (const std::exception& e) {
      s.ok = false;
      s.error = e.what();
    }
    return s;
  });
  res.evaluations = n;
  std::size_t good = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i].perturbed) ++res.perturbed_points, res.evaluations += grid[i].perturbed;
    if (!grid[i].ok) {
      good = i;
      res.partial = true;
      res.error = grid[i].error;
      break;
    }
  }
  // brackets between consecutive signed samples
  std::vector<std::pair<std::size_t, std::size_t>> brackets;
  std::size_t last = n;
  for (std::size_t i = 0; i < good; ++i) {
    int s = sign_of(grid[i].f, noise);
    if (s == 0) continue;
    if (last != n && sign_of(grid[last].f, noise) == -s) brackets.emplace_back(last, i);
    last = i;
  }
  struct Refined {
    Zero z;
    std::size_t evals = 0;
    bool ok = true;
    std::string error;
  };
  auto refined = parallel_map(brackets.size(), [&](std::size_t b) {
    Refined r;
    double lo = grid[brackets[b].first].t, hi = grid[brackets[b].second].t;
    double flo = grid[brackets[b].first].f, fhi = grid[brackets[b].second].f;
    try {
      while (hi - lo > refine_tol) {
        double mid = 0.5 * (lo + hi);
        double fm = c.frak_F(mid);
        ++r.evals;
        if (sign_of(fm, noise) == 0) break;  // the zero sits within noise of mid; keep the valid bracket
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
          fhi = fm;
        }
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    r.z = Zero{0.5 * (lo + hi), hi - lo, lo, hi, flo, fhi};
    return r;
  });
  for (auto& r : refined) {
    res.evaluations += r.evals;
    if (!r.ok) {
      res.partial = true;
      if (res.error.empty()) res.error = r.error;
      continue;
    }
    res.zeros.push_back(r.z);
  }
  std::sort(res.zeros.begin(), res.zeros.end(), [](const Zero& a, const Zero& b) { return a.ordinate < b.ordinate; });
  return res;
}

namespace {

struct EdgeTrack {
  double darg = 0.0;
  std::size_t evals = 0;
  bool ok = true;
  std::string why;
};

constexpr int kMaxDepth = 14;

class ContourTracker {
 public:
  ContourTracker(const Combination& c, double tiny) : c_(c), tiny_(tiny) {}

  EdgeTrack edge(cplx a, cplx b, double spacing) {
    EdgeTrack tr;
    std::size_t n = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(std::abs(b - a) / spacing)));
    std::vector<cplx> pts(n + 1);
    for (std::size_t k = 0; k <= n; ++k) pts[k] = a + (b - a) * (static_cast<double>(k) / n);
    pts[n] = b;
    struct V {
      cplx f;
      bool ok = true;
      std::string err;
    };
    auto vals = parallel_map(n + 1, [&](std::size_t k) {
      V v;
      try {
        v.f = c_.lambda_combination(pts[k]);
      } catch (const std::exception& e) {
        v.ok = false;
        v.err = e.what();
      }
      return v;
    });
    tr.evals += n + 1;
    for (std::size_t k = 0; k <= n; ++k) {
      if (!vals[k].ok) return fail(tr, vals[k].err);
      if (std::abs(vals[k].f) <= tiny_) return fail(tr, "function within noise of zero on the contour");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!refine(pts[k], pts[k + 1], vals[k].f, vals[k + 1].f, 0, tr)) return tr;
    }
    return tr;
  }

 private:
  static EdgeTrack& fail(EdgeTrack& tr, const std::string& why) {
    tr.ok = false;
    tr.why = why;
    return tr;
  }

  bool refine(cplx a, cplx b, cplx fa, cplx fb, int depth, EdgeTrack& tr) {
    double d = std::arg(fb / fa);
    if (std::abs(d) < kPi / 2.0) {
      tr.darg += d;
      return true;
    }
    if (depth >= kMaxDepth) {
      fail(tr, "phase still jumps after maximal subdivision");
      return false;
    }
    cplx mid = 0.5 * (a + b);
    cplx fm;
    try {
      fm = c_.lambda_combination(mid);
    } catch (const std::exception& e) {
      fail(tr, e.what());
      return false;
    }
    ++tr.evals;
    if (std::abs(fm) <= tiny_) {
      fail(tr, "function within noise of zero on the contour");
      return false;
    }
    return refine(a, mid, fa, fm, depth + 1, tr) && refine(mid, b, fm, fb, depth + 1, tr);
  }

  const Combination& c_;
  double tiny_;
};

std::string describe(double slo, double shi, double t0, double t1, int edge) {
  std::ostringstream os;
  switch (edge) {
    case 0: os << "bottom edge t=" << t0 << ", sigma in [" << slo << "," << shi << "]"; break;
    case 1: os << "right edge sigma=" << shi << ", t in [" << t0 << "," << t1 << "]"; break;
    case 2: os << "top edge t=" << t1 << ", sigma in [" << slo << "," << shi << "]"; break;
    default: os << "left edge sigma=" << slo << ", t in [" << t0 << "," << t1 << "]"; break;
  }
  return os.str();
}

}  // namespace

CountResult count_zeros_region(const Combination& c, double sigma_lo, double sigma_hi, double t0, double t1,
                               double step) {
  if (!(sigma_hi > sigma_lo) || !(t1 > t0)) throw DomainError("count: empty rectangle");
  if (c.has_principal() && t0 <= 0.0 && t1 >= 0.0)
    throw DomainError("count: the principal character has poles at s=0,1; use t0 > 0");
  if (step <= 0.0) step = default_step(std::max(std::abs(t0), std::abs(t1)), c.field().D);
  const double tiny = 10.0 * c.tol() * static_cast<double>(c.m());
  CountResult res;
  std::string last_failure;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    double d = step * 0.1 * attempt / 3.0;
    double slo = sigma_lo - d, shi = sigma_hi + d;
    double a0 = t0 == 0.0 ? t0 : t0 - d, a1 = t1 + d;
    ContourTracker tracker(c, tiny);
    cplx corners[4] = {cplx(slo, a0), cplx(shi, a0), cplx(shi, a1), cplx(slo, a1)};
    double total = 0.0;
    bool ok = true;
    for (int e = 0; e < 4 && ok; ++e) {
      EdgeTrack tr = tracker.edge(corners[e], corners[(e + 1) % 4], step);
      res.evaluations += tr.evals;
      if (!tr.ok) {
        ok = false;
        last_failure = describe(slo, shi, a0, a1, e) + ": " + tr.why;
        break;
      }
      total += tr.darg;
    }
    if (ok) {
      double w = total / (2.0 * kPi);
      double r = std::round(w);
      if (std::abs(w - r) < 0.05) {
        res.count = static_cast<long>(r);
        res.winding = w;
        res.perturbations = attempt;
        res.sigma_lo = slo;
        res.sigma_hi = shi;
        res.t0 = a0;
        res.t1 = a1;
        return res;
      }
      std::ostringstream os;
      os << "winding " << w << " not within 0.05 of an integer";
      last_failure = os.str();
    }
    std::ostringstream os;
    os << "attempt " << attempt << " failed (" << last_failure << "); perturbing contour by " << step * 0.1 * (attempt + 1) / 3.0;
    res.log.push_back(os.str());
  }
  throw ConvergenceError("argument principle did not stabilize: " + last_failure);
}

AuditResult halving_audit(const Combination& c, const ScanResult& full, double refine_tol) {
  AuditResult a;
  ScanResult half = scan_sign_changes(c, full.t0, full.t1, full.step / 2.0, std::min(refine_tol, full.step / 4.0));
  a.zeros_full = full.zeros.size();
  a.zeros_half = half.zeros.size();
  // one-to-one matching by proximity; half-step zeros left over were missed at full step
  std::vector<char> used(full.zeros.size(), 0);
  for (const Zero& z : half.zeros) {
    std::size_t best = full.zeros.size();
    double dist = full.step;
    for (std::size_t i = 0; i < full.zeros.size(); ++i) {
      double d = std::abs(z.ordinate - full.zeros[i].ordinate);
      if (!used[i] && d <= dist) {
        dist = d;
        best = i;
      }
    }
    if (best == full.zeros.size())
      a.missed.push_back(z.ordinate);
    else
      used[best] = 1;
  }
  return a;
}

std::vector<ProportionRow> proportion_report(const Combination& c, const std::vector<double>& Ts, double refine_tol) {
  std::vector<ProportionRow> rows;
  for (double T : Ts) {
    if (!(T > 0.0)) throw DomainError("proportion_report: T must be positive");
    double step = default_step(2.0 * T, c.field().D);
    ScanResult s = scan_sign_changes(c, T, 2.0 * T, step, refine_tol);
    if (s.partial) throw Error("proportion_report: scan failed: " + s.error);
    CountResult b = count_zeros_region(c, -1.0, 2.5, T, 2.0 * T, step);
    ProportionRow r;
    r.T = T;
    r.N0 = static_cast<long>(s.zeros.size());
    r.N_box = b.count;
    r.ratio = b.count == 0 ? 1.0 : static_cast<double>(r.N0) / static_cast<double>(b.count);
    r.normalized = static_cast<double>(r.N0) / (T * std::log(T));
    r.flagged = c.m() == 1 && r.ratio < 1.0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hecke
