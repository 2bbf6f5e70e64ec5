#include "hecke/moments.hpp"

#include <cmath>
#include <sstream>

#include "hecke/error.hpp"
#include "hecke/parallel.hpp"
#include "hecke/quadrature.hpp"
#include "hecke/random.hpp"

namespace hecke {

double MomentConfig::window() const { return H > 0.0 ? H : A * static_cast<double>(m) / std::log(T); }

double MomentConfig::cutoff() const { return X > 0.0 ? X : std::max(3.0, std::pow(T, x_exp)); }

double MomentConfig::panel_width() const { return panel > 0.0 ? panel : 1.0 / (4.0 * std::log(T)); }

void MomentConfig::validate() const {
  if (!(T >= 10.0)) throw DomainError("moments: T must be at least 10");
  if (!(window() > 0.0)) throw DomainError("moments: H must be positive");
  if (!(cutoff() >= 3.0)) throw DomainError("moments: X must be at least 3");
  if (samples < 16) throw DomainError("moments: at least 16 samples are required");
  if (!(panel_width() > 0.0)) throw DomainError("moments: panel width must be positive");
  if (m < 1) throw DomainError("moments: m must be at least 1");
}

namespace {

struct NodeValues {
  double fI = 0.0, fJ = 0.0;
  cplx fM = 0.0;
};

NodeValues node(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double u, double T) {
  NodeValues v;
  const cplx s(0.5, u);
  const double lam = ctx.critical_scaled(u).at(j);
  const cplx eta = mollifier_eval(mt, s);
  const double damp = std::exp(-u / T);
  const double e2 = std::norm(eta);
  v.fI = lam * e2 * damp;
  v.fJ = std::abs(lam) * e2 * damp;
  v.fM = lam * std::exp(-ctx.log_gamma_factor_scaled(s)) * eta * eta;
  return v;
}

struct Sums {
  double I = 0.0, J = 0.0, absI = 0.0, absJ = 0.0, absM = 0.0;
  cplx M = 0.0;
};

Sums rule_sums(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H, double T,
               std::size_t panels) {
  QuadRule q = gauss_legendre_composite(t, t + H, panels);
  Compensated I, J, Mr, Mi;
  Sums s;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) {
    NodeValues v = node(ctx, j, mt, q.nodes[k], T);
    const double w = q.weights[k];
    I.add(w * v.fI);
    J.add(w * v.fJ);
    Mr.add(w * v.fM.real());
    Mi.add(w * v.fM.imag());
    s.absI += w * std::abs(v.fI);
    s.absJ += w * v.fJ;
    s.absM += w * std::abs(v.fM);
  }
  s.I = I.value();
  s.J = J.value();
  s.M = cplx(Mr.value(), Mi.value());
  return s;
}

}  // namespace

namespace {

// Zeros of Lambda_j on the critical line inside (a, b), located by sign changes on a grid
// of the given spacing and refined by bisection. |Lambda| has a kink at each of them.
std::vector<double> kinks(const EvalContext& ctx, std::size_t j, double a, double b, double spacing) {
  std::vector<double> out;
  std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / spacing)));
  double prev_u = a, prev = ctx.critical_scaled(a).at(j);
  for (std::size_t i = 1; i <= n; ++i) {
    double u = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
    double f = ctx.critical_scaled(u).at(j);
    if ((prev < 0.0 && f > 0.0) || (prev > 0.0 && f < 0.0)) {
      double lo = prev_u, hi = u, flo = prev;
      for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = ctx.critical_scaled(mid).at(j);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    }
    prev_u = u;
    prev = f;
  }
  return out;
}

}  // namespace

WindowIntegrals window_integrals(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t,
                                 double H, double T, double panel) {
  WindowIntegrals w;
  if (H < 0.0) throw DomainError("window integrals: H must be non-negative");
  if (H == 0.0) return w;
  // Lambda keeps one sign between consecutive kinks, so J is the sum of |I| over those pieces
  std::vector<double> cuts{t};
  for (double z : kinks(ctx, j, t, t + H, panel / 4.0)) cuts.push_back(z);
  cuts.push_back(t + H);
  Compensated I, J, Mr, Mi;
  double errI = 0.0, errJ = 0.0, absI = 0.0, absM = 0.0;
  cplx errM = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = cuts[k], h = cuts[k + 1] - a;
    if (!(h > 0.0)) continue;
    std::size_t P = panels_for(a, a + h, panel);
    Sums coarse = rule_sums(ctx, j, mt, a, h, T, P);
    Sums fine = rule_sums(ctx, j, mt, a, h, T, 2 * P);
    I.add(fine.I);
    J.add(std::abs(fine.I));
    Mr.add(fine.M.real());
    Mi.add(fine.M.imag());
    errI += std::abs(fine.I - coarse.I);
    errJ += std::abs(std::abs(fine.I) - std::abs(coarse.I));
    errM += fine.M - coarse.M;
    absI += fine.absI;
    absM += fine.absM;
  }
  w.I = {I.value(), std::max(errI, 1e-14 * absI)};
  w.J = {J.value(), std::max(errJ, 1e-14 * absI)};
  cplx M = cplx(Mr.value(), Mi.value()) - H;
  w.M = {M.real(), std::max(std::abs(errM), 1e-14 * (absM + H))};
  w.M_imag = M.imag();
  w.I_abs = std::abs(w.I.value);
  auto bad = [](const Estimate& e) { return !std::isfinite(e.value) || e.error > 1e-6 * (1.0 + std::abs(e.value)); };
  w.flagged = bad(w.I) || bad(w.J) || bad(w.M);
  return w;
}

Estimate integral_I(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H, double T,
                    double panel) {
  return window_integrals(ctx, j, mt, t, H, T, panel).I;
}

Estimate integral_M(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H,
                    double panel, double* imag_residual) {
  // M carries no exponential weight, so T only enters through the unused damping factor
  WindowIntegrals w = window_integrals(ctx, j, mt, t, H, 1e300, panel);
  if (imag_residual) *imag_residual = w.M_imag;
  return w.M;
}

Estimate integral_J(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H, double T,
                    double panel) {
  return window_integrals(ctx, j, mt, t, H, T, panel).J;
}

std::vector<double> stratified_samples(double T, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto g = sample_rng(seed, i, stream);
    t[i] = T + (static_cast<double>(i) + uniform01(g)) * T / static_cast<double>(n);
  }
  return t;
}

namespace {

MeanEstimate mean_of(const std::vector<double>& v) {
  MeanEstimate m;
  if (v.empty()) return m;
  Compensated s;
  for (double x : v) s.add(x);
  m.mean = s.value() / static_cast<double>(v.size());
  if (v.size() > 1) {
    Compensated q;
    for (double x : v) q.add((x - m.mean) * (x - m.mean));
    m.se = std::sqrt(q.value() / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }
  return m;
}

}  // namespace

MomentReport moment_suite(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, const MomentConfig& cfg) {
  if (!(cfg.T >= 10.0)) throw DomainError("moments: T must be at least 10");
  if (cfg.samples < 16) throw DomainError("moments: at least 16 samples are required");
  MomentReport r;
  r.T = cfg.T;
  r.H = cfg.window();
  r.X = mt.X;
  r.samples = cfg.samples;
  if (!(r.H > 0.0)) throw DomainError("moments: H must be positive");
  const double panel = cfg.panel_width();
  r.t = stratified_samples(cfg.T, cfg.samples, cfg.seed);
  struct Out {
    WindowIntegrals w;
    double leta2 = 0.0;
  };
  auto outs = parallel_map(cfg.samples, [&](std::size_t i) {
    Out o;
    o.w = window_integrals(ctx, j, mt, r.t[i], r.H, cfg.T, panel);
    cplx eta = mollifier_eval(mt, cplx(0.5, r.t[i]));
    cplx L = ctx.l_critical(j, r.t[i]);
    o.leta2 = std::norm(L * eta * eta);
    return o;
  });
  std::vector<double> i2, l2, m2;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    const auto& w = outs[i].w;
    r.windows.push_back(w);
    r.leta2.push_back(outs[i].leta2);
    if (w.flagged) {
      ++r.excluded;
      continue;
    }
    r.max_quadrature_error = std::max({r.max_quadrature_error, w.I.error, w.J.error, w.M.error});
    i2.push_back(w.I.value * w.I.value);
    l2.push_back(outs[i].leta2);
    double absM = std::hypot(w.M.value, w.M_imag);
    m2.push_back(absM * absM);
    if (w.J.value >= std::exp(-3.0) * (r.H - absM)) ++r.chain_holds;
    if (w.J.value >= w.I_abs * (1.0 - 1e-12)) ++r.dominance_holds;
  }
  r.I2 = mean_of(i2);
  r.Leta = mean_of(l2);
  r.M2 = mean_of(m2);
  const double norm = r.H / std::log(cfg.T);
  r.rho5 = r.I2.mean / norm;
  r.rho5_err = r.I2.se / norm;
  r.rho6 = r.Leta.mean;
  r.rho6_err = r.Leta.se;
  r.rho7 = r.M2.mean / norm;
  r.rho7_err = r.M2.se / norm;
  return r;
}

MeanEstimate j_sigma(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double sigma, double T,
                     std::size_t samples, std::uint64_t seed) {
  if (!(sigma >= 0.5 && sigma <= 1.5)) throw DomainError("j_sigma: sigma must lie in [1/2, 3/2]");
  if (samples < 1) throw DomainError("j_sigma: need samples");
  std::vector<double> t = stratified_samples(T, samples, seed, 7);
  std::vector<double> v = parallel_map(samples, [&](std::size_t i) {
    cplx s(sigma, t[i]);
    cplx eta = mollifier_eval(mt, s);
    return std::norm(ctx.l_value(j, s) * eta * eta - 1.0);
  });
  return mean_of(v);
}

double log_linear_slope(const std::vector<double>& sigma, const std::vector<double>& values) {
  if (sigma.size() != values.size() || sigma.size() < 2) throw DomainError("slope: need at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!(values[i] > 0.0)) throw DomainError("slope: values must be positive");
    double y = std::log(values[i]);
    sx += sigma[i];
    sy += y;
    sxx += sigma[i] * sigma[i];
    sxy += sigma[i] * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace hecke
