#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hecke/lfunc.hpp"

namespace hecke {

/// Real linear combination of completed L-functions of one field.
struct CombinationSpec {
  std::vector<std::size_t> chars;  // character indices
  std::vector<double> coeffs;
};

/// Parses "k1:c1,k2:c2".
CombinationSpec parse_combination(const std::string& text);

/// Checks a combination against the character list: nonzero coefficients, distinct L-functions.
void validate_combination(const CombinationSpec& spec, const std::vector<HeckeCharacter>& chars);

/// Owns the coefficient tables and evaluation context for a combination.
class Combination {
 public:
  /// Builds tables long enough for |t| <= t_max and sigma in [sigma_lo, sigma_hi].
  /// cache_dir empty means no cache.
  Combination(const FieldData& field, const std::vector<HeckeCharacter>& chars, CombinationSpec spec,
              double t_max, double sigma_lo = -1.0, double sigma_hi = 2.5, EvalOptions opt = {},
              const std::string& cache_dir = "");

  std::size_t m() const { return spec_.coeffs.size(); }
  const CombinationSpec& spec() const { return spec_; }
  const EvalContext& context() const { return *ctx_; }
  const FieldData& field() const { return *field_; }
  bool has_principal() const { return principal_; }
  double tol() const { return ctx_->tol(); }

  /// sum_j c_j e^{pi|t|/2} Lambda_j(1/2 + i t); the imaginary residue is checked against m tol.
  double frak_F(double t) const;
  /// Same value from the critical-line path without the residue check.
  double frak_F_fast(double t) const;
  /// sum_j c_j e^{pi|t|/2} Lambda_j(s).
  cplx lambda_combination(cplx s) const;
  /// Largest imaginary residue seen by frak_F.
  double residue(double t) const;

 private:
  const FieldData* field_;
  CombinationSpec spec_;
  std::vector<CoefficientTable> tables_;
  std::unique_ptr<EvalContext> ctx_;
  bool principal_ = false;
};

/// Default grid step 1/(4 log((t1 + 3) sqrt D)).
double default_step(double t1, std::uint64_t D);

struct Zero {
  double ordinate;  // bracket midpoint
  double width;
  double lo, hi;      // bracket
  double f_lo, f_hi;  // frak_F at the bracket ends, of strictly opposite sign
};

struct ScanResult {
  double t0 = 0, t1 = 0, step = 0;
  std::vector<Zero> zeros;
  std::size_t evaluations = 0;
  std::size_t perturbed_points = 0;
  bool partial = false;
  std::string error;
};

/// Sign changes of frak_F on a grid over [t0, t1], each refined by bisection to width refine_tol.
ScanResult scan_sign_changes(const Combination& c, double t0, double t1, double step, double refine_tol);

struct CountResult {
  long count = 0;
  double winding = 0.0;  // unrounded
  int perturbations = 0;
  std::size_t evaluations = 0;
  double sigma_lo = 0, sigma_hi = 0, t0 = 0, t1 = 0;  // contour actually used
  std::vector<std::string> log;
};

/// Zeros of sum_j c_j Lambda_j inside [sigma_lo, sigma_hi] x [t0, t1] by the argument principle.
/// For t0 > 0 these are the zeros of sum_j c_j L_j. step sets the initial edge spacing and the
/// size of contour perturbations (0 means default_step).
CountResult count_zeros_region(const Combination& c, double sigma_lo, double sigma_hi, double t0, double t1,
                               double step = 0.0);

struct DensityRow {
  double sigma;
  long count;
};

/// "missed zero" events from rescanning at half step.
struct AuditResult {
  std::size_t zeros_full = 0, zeros_half = 0;
  std::vector<double> missed;  // ordinates found only at half step
};

AuditResult halving_audit(const Combination& c, const ScanResult& full, double refine_tol);

struct ZeroScanReport {
  ScanResult scan;
  CountResult box;
  long gap = 0;
  std::vector<DensityRow> density;
  AuditResult audit;
  bool audited = false;
};

struct ProportionRow {
  double T;
  long N0;
  long N_box;
  double ratio;       // N0 / N_box (1 when N_box = 0)
  double normalized;  // N0 / (T log T)
  bool flagged;       // ratio < 1 for a single L-function
};

/// N0 on [T, 2T] against the box count over [-1, 2.5] x [T, 2T] for every T.
std::vector<ProportionRow> proportion_report(const Combination& c, const std::vector<double>& Ts,
                                             double refine_tol = 1e-6);

}  // namespace hecke
