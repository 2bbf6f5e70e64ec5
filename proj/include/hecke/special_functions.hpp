#pragma once

#include <complex>
#include <vector>

namespace hecke {

using cplx = std::complex<double>;

/// log Gamma(z) up to a multiple of 2 pi i; real part is ln|Gamma(z)|. z off the non-positive integers.
cplx lgamma_complex(cplx z);

/// Validated envelope of the incomplete gamma kernel.
inline constexpr double kMaxGammaImag = 4.0e4;
inline constexpr double kMaxGammaReal = 10.0;
inline constexpr double kMaxGammaX = 1.0e5;

/// G(s, z) = int_1^inf e^{-z u} u^{s-1} du = z^{-s} Gamma(s, z), for Re z > 0.
/// One object per s; reuse it across many z.
class IncompleteGamma {
 public:
  explicit IncompleteGamma(cplx s);

  cplx operator()(cplx z);
  cplx s() const { return s_; }
  /// Iterations used by the last call.
  int last_iterations() const { return iters_; }
  /// Whether the last call used the continued fraction.
  bool last_used_cf() const { return cf_; }

 private:
  cplx series(cplx z);
  cplx continued_fraction(cplx z);

  cplx s_;
  cplx lg_;
  bool near_pole_;
  std::vector<cplx> inv_;  // 1/(s+k)
  int iters_ = 0;
  bool cf_ = false;
};

/// Gamma(s, x) = int_x^inf e^{-u} u^{s-1} du for real x > 0. Throws DomainError outside the envelope.
cplx upper_incomplete_gamma(cplx s, double x, double tol = 1e-12);

}  // namespace hecke
