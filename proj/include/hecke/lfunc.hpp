#pragma once

#include <complex>
#include <vector>

#include "hecke/class_field.hpp"
#include "hecke/coefficients.hpp"
#include "hecke/special_functions.hpp"

namespace hecke {

struct EvalOptions {
  double tol = 1e-9;  // absolute, in units of e^{pi |t| / 2} Lambda
  /// The Mellin contour is rotated to angle pi/2 - rotation/|t| once |t| > 2 rotation / pi.
  double rotation = 12.0;
  /// lambda_scaled splits the theta integral at split * e^{i phi} instead of e^{i phi}.
  /// Away from 1 the two halves are no longer conjugate on the critical line. Must lie in [0.5, 2].
  double split = 1.0;
};

/// Table length needed at s = sigma + i t (see EvalContext::n_max).
std::size_t required_terms(std::uint64_t D, const EvalOptions& opt, double sigma, double t);
/// Largest required_terms over sigma in {lo, hi, 1/2} and heights up to |t|.
std::size_t required_terms_range(std::uint64_t D, const EvalOptions& opt, double sigma_lo, double sigma_hi,
                                 double t);

/// Evaluates the completed L-functions of several characters of one field.
/// Every table must belong to the same discriminant; results come back in table order.
class EvalContext {
 public:
  EvalContext(const FieldData& field, std::vector<const CoefficientTable*> tables, std::vector<bool> principal,
              EvalOptions opt = {});
  EvalContext(const FieldData& field, const CoefficientTable& table, bool principal, EvalOptions opt = {});

  std::size_t size() const { return tables_.size(); }
  const CoefficientTable& table(std::size_t j) const { return *tables_.at(j); }
  const FieldData& field() const { return *field_; }
  const EvalOptions& options() const { return opt_; }
  double tol() const { return opt_.tol; }

  /// Contour angle used at height t.
  double angle(double t) const;
  /// Table length required at s = sigma + i t.
  std::size_t n_max(double sigma, double t) const;
  /// Largest n_max over sigma in {lo, hi} and |t| <= t.
  std::size_t n_max_range(double sigma_lo, double sigma_hi, double t) const;

  /// e^{pi |t| / 2} Lambda(s) for every table.
  std::vector<cplx> lambda_scaled(cplx s) const;
  /// Real e^{pi |t| / 2} Lambda(1/2 + i t) for every table (critical line).
  std::vector<double> critical_scaled(double t) const;

  /// log of the scale factor e^{pi|t|/2} (2 pi / sqrt D)^{-s} Gamma(s), as a complex logarithm.
  cplx log_gamma_factor_scaled(cplx s) const;

  /// Single-table conveniences (table j).
  cplx lambda_completed(std::size_t j, cplx s) const;  // raw Lambda(s)
  cplx l_value(std::size_t j, cplx s) const;
  cplx l_critical(std::size_t j, double t) const;

 private:
  void check_table(std::size_t need, double sigma, double t) const;
  cplx polar_scaled(cplx s, double phi, double rho = 1.0) const;

  const FieldData* field_;
  std::vector<const CoefficientTable*> tables_;
  std::vector<double> a0_;  // constant theta term h/w for the principal character
  EvalOptions opt_;
  double x1_;  // 2 pi / sqrt D
  double log_x1_;
};

struct LogAbs {
  double value;
  bool clipped;
};

/// log|L(1/2+it)| clipped below at floor when |Lambda| is within 10 tol of zero or the log falls below floor.
LogAbs log_abs_l(const EvalContext& ctx, std::size_t j, double t, double floor = -50.0);

/// log|L(1/2+it)| for every table of the context.
std::vector<LogAbs> log_abs_l_all(const EvalContext& ctx, double t, double floor = -50.0);

/// eta(s) = sum_{nu <= X} beta(nu) nu^{-s}.
cplx mollifier_eval(const MollifierTable& m, cplx s);

}  // namespace hecke
