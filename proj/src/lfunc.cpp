#include "hecke/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hecke/error.hpp"

namespace hecke {

namespace {

const double kPi = std::acos(-1.0);

double contour_angle(double rotation, double t) {
  t = std::abs(t);
  return t > 2.0 * rotation / kPi ? kPi / 2.0 - rotation / t : 0.0;
}

}  // namespace

EvalContext::EvalContext(const FieldData& field, std::vector<const CoefficientTable*> tables,
                         std::vector<bool> principal, EvalOptions opt)
    : field_(&field), tables_(std::move(tables)), opt_(opt) {
  if (tables_.empty()) throw DomainError("EvalContext: no coefficient tables");
  if (principal.size() != tables_.size()) throw DomainError("EvalContext: principal flags do not match tables");
  if (!(opt_.tol > 0.0)) throw DomainError("EvalContext: tolerance must be positive");
  if (!(opt_.rotation >= 1.0 && opt_.rotation <= 30.0)) throw DomainError("EvalContext: rotation outside [1, 30]");
  if (!(opt_.split >= 0.5 && opt_.split <= 2.0)) throw DomainError("EvalContext: split outside [0.5, 2]");
  for (std::size_t j = 0; j < tables_.size(); ++j) {
    if (tables_[j]->D != field.D) throw DomainError("EvalContext: all tables must share the field discriminant");
    a0_.push_back(principal[j] ? static_cast<double>(field.h) / field.w : 0.0);
  }
  x1_ = 2.0 * kPi / std::sqrt(static_cast<double>(field.D));
  log_x1_ = std::log(x1_);
}

EvalContext::EvalContext(const FieldData& field, const CoefficientTable& table, bool principal, EvalOptions opt)
    : EvalContext(field, std::vector<const CoefficientTable*>{&table}, std::vector<bool>{principal}, opt) {}

double EvalContext::angle(double t) const { return contour_angle(opt_.rotation, t); }

std::size_t required_terms(std::uint64_t D, const EvalOptions& opt, double sigma, double t) {
  t = std::abs(t);
  const double x1 = 2.0 * kPi / std::sqrt(static_cast<double>(D));
  const double phi = contour_angle(opt.rotation, t);
  const double a1 = x1 * std::cos(phi) * std::min(opt.split, 1.0 / opt.split);
  const double m = std::max(0.0, std::max(sigma, 1.0 - sigma) - 1.0);
  // |G(s, x e^{i phi})| <= e^{-a} / (a - m), a = x cos phi; both families, scale e^{(pi/2 - phi) t},
  // |r(n)| <= tau(n) <= 2 sqrt n, geometric tail
  const double log_target = std::log(0.1 * opt.tol) - (kPi / 2.0 - phi) * t - std::log(2.0);
  const double q0 = std::exp(-a1);
  std::size_t N = std::max<std::size_t>(1, static_cast<std::size_t>((m + 1e-3) / a1));
  for (; N < 400000000; ++N) {
    double n1 = static_cast<double>(N + 1);
    double a = a1 * n1;
    if (a <= m + 1e-3) continue;
    double q = q0 * std::sqrt((n1 + 1.0) / n1);
    if (q >= 1.0) continue;
    double log_tail = std::log(2.0 * std::sqrt(n1)) - a - std::log(a - m) - std::log1p(-q);
    if (log_tail < log_target) return N;
  }
  throw DomainError("n_max: no admissible truncation");
}

std::size_t required_terms_range(std::uint64_t D, const EvalOptions& opt, double sigma_lo, double sigma_hi,
                                 double t) {
  // the bound is largest at the top of the range for the extreme abscissae; small heights use phi = 0
  std::size_t n = 0;
  for (double s : {sigma_lo, sigma_hi, 0.5}) {
    n = std::max(n, required_terms(D, opt, s, t));
    n = std::max(n, required_terms(D, opt, s, std::min(std::abs(t), 2.0 * opt.rotation / kPi)));
  }
  return n;
}

std::size_t EvalContext::n_max(double sigma, double t) const { return required_terms(field_->D, opt_, sigma, t); }

std::size_t EvalContext::n_max_range(double sigma_lo, double sigma_hi, double t) const {
  return required_terms_range(field_->D, opt_, sigma_lo, sigma_hi, t);
}

void EvalContext::check_table(std::size_t need, double sigma, double t) const {
  for (const auto* tab : tables_)
    if (tab->N < need) {
      std::ostringstream os;
      os << "coefficient table too short at s=" << sigma << "+" << t << "i: n_max=" << need << ", table has "
         << tab->N;
      throw DomainError(os.str());
    }
}

cplx EvalContext::polar_scaled(cplx s, double phi, double rho) const {
  const double t = s.imag();
  const double sigma = s.real();
  const cplx r = std::exp(std::log(rho) * s);
  cplx term = r / rho * std::polar(1.0, phi * (sigma - 1.0)) / (s - 1.0) - r * std::polar(1.0, phi * sigma) / s;
  return std::exp((kPi / 2.0 - phi) * t) * term;
}

std::vector<cplx> EvalContext::lambda_scaled(cplx s) const {
  const bool flip = s.imag() < 0.0;
  if (flip) s = std::conj(s);
  const double sigma = s.real(), t = s.imag();
  if (t > kMaxGammaImag) throw DomainError("lambda: |Im s| outside the validated envelope");
  if (sigma < -3.0 || sigma > 4.0) throw DomainError("lambda: Re s outside [-3, 4]");
  const std::size_t N = n_max(sigma, t);
  check_table(N, sigma, t);
  const double phi = angle(t);
  const cplx z1 = std::polar(x1_, phi);
  const double rho = opt_.split;
  IncompleteGamma g1(s), g2(cplx(1.0 - sigma, t));
  const std::size_t m = tables_.size();
  std::vector<cplx> A(m, 0.0), B(m, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    bool any = false;
    for (const auto* tab : tables_) any = any || tab->r[n] != 0.0;
    if (!any) continue;
    cplx z = static_cast<double>(n) * z1;
    cplx u = g1(rho * z), v = g2(z / rho);
    for (std::size_t j = 0; j < m; ++j) {
      A[j] += tables_[j]->r[n] * u;
      B[j] += tables_[j]->r[n] * v;
    }
  }
  const double scale = std::exp((kPi / 2.0 - phi) * t);
  const cplx rs = std::polar(std::pow(rho, sigma), t * std::log(rho));
  const cplx e1 = rs * std::polar(scale, phi * sigma), e2 = rs / rho * std::polar(scale, phi * (sigma - 1.0));
  std::vector<cplx> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = e1 * A[j] + e2 * std::conj(B[j]);
    if (a0_[j] != 0.0) out[j] += a0_[j] * polar_scaled(s, phi, rho);
    if (flip) out[j] = std::conj(out[j]);
  }
  return out;
}

std::vector<double> EvalContext::critical_scaled(double t) const {
  t = std::abs(t);
  if (t > kMaxGammaImag) throw DomainError("lambda: |Im s| outside the validated envelope");
  const std::size_t N = n_max(0.5, t);
  check_table(N, 0.5, t);
  const double phi = angle(t);
  const cplx z1 = std::polar(x1_, phi);
  const cplx s(0.5, t);
  IncompleteGamma g(s);
  const std::size_t m = tables_.size();
  std::vector<cplx> A(m, 0.0);
  for (std::size_t n = 1; n <= N; ++n) {
    bool any = false;
    for (const auto* tab : tables_) any = any || tab->r[n] != 0.0;
    if (!any) continue;
    cplx u = g(static_cast<double>(n) * z1);
    for (std::size_t j = 0; j < m; ++j) A[j] += tables_[j]->r[n] * u;
  }
  const cplx e = std::polar(std::exp((kPi / 2.0 - phi) * t), phi / 2.0);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out[j] = 2.0 * (e * A[j]).real();
    if (a0_[j] != 0.0) out[j] += a0_[j] * polar_scaled(s, phi).real();
  }
  return out;
}

cplx EvalContext::log_gamma_factor_scaled(cplx s) const {
  return kPi / 2.0 * std::abs(s.imag()) - s * log_x1_ + lgamma_complex(s);
}

cplx EvalContext::lambda_completed(std::size_t j, cplx s) const {
  return lambda_scaled(s).at(j) * std::exp(-kPi / 2.0 * std::abs(s.imag()));
}

cplx EvalContext::l_value(std::size_t j, cplx s) const {
  return lambda_scaled(s).at(j) * std::exp(-log_gamma_factor_scaled(s));
}

cplx EvalContext::l_critical(std::size_t j, double t) const { return l_value(j, cplx(0.5, t)); }

namespace {

LogAbs log_abs_from(double lam, double log_factor, double tol, double floor) {
  if (std::abs(lam) <= 10.0 * tol) return {floor, true};
  double v = std::log(std::abs(lam)) - log_factor;
  if (v < floor) return {floor, true};
  return {v, false};
}

}  // namespace

LogAbs log_abs_l(const EvalContext& ctx, std::size_t j, double t, double floor) {
  double lam = ctx.critical_scaled(t).at(j);
  return log_abs_from(lam, ctx.log_gamma_factor_scaled(cplx(0.5, t)).real(), ctx.tol(), floor);
}

std::vector<LogAbs> log_abs_l_all(const EvalContext& ctx, double t, double floor) {
  std::vector<double> lam = ctx.critical_scaled(t);
  double lf = ctx.log_gamma_factor_scaled(cplx(0.5, t)).real();
  std::vector<LogAbs> out;
  for (double v : lam) out.push_back(log_abs_from(v, lf, ctx.tol(), floor));
  return out;
}

cplx mollifier_eval(const MollifierTable& m, cplx s) {
  cplx sum = 0.0;
  for (std::size_t v = 1; v < m.beta.size(); ++v) {
    if (m.beta[v] == 0.0) continue;
    sum += m.beta[v] * std::exp(-s * std::log(static_cast<double>(v)));
  }
  return sum;
}

}  // namespace hecke
