#pragma once

#include <cstdint>
#include <vector>

#include "hecke/lfunc.hpp"

namespace hecke {

struct MomentConfig {
  double T = 1000.0;
  double A = 1.0;       // H = A m / log T unless H is set
  double H = 0.0;       // 0 selects the default
  double x_exp = 0.125;  // X = T^x_exp, clamped below at 3, unless X is set
  double X = 0.0;
  std::size_t samples = 64;
  double panel = 0.0;  // 0 selects 1/(4 log T)
  std::uint64_t seed = 1;
  std::size_t m = 1;  // number of L-functions in the combination (enters H)

  double window() const;
  double cutoff() const;
  double panel_width() const;
  void validate() const;
};

/// Value with a quadrature error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct WindowIntegrals {
  Estimate I;      // int Lambda |eta|^2 exp((pi/2 - 1/T) u) du
  Estimate M;      // Re of int L eta^2 du - H
  double M_imag = 0.0;
  Estimate J;      // int |Lambda| |eta|^2 exp((pi/2 - 1/T) u) du
  double I_abs = 0.0;  // |I| for the pointwise J >= |I| check
  bool flagged = false;
};

/// The three window integrals over [t, t + H] from one set of Gauss-Legendre nodes.
/// The reported value uses 2P panels; the error is |Q_2P - Q_P| (or a rounding floor).
WindowIntegrals window_integrals(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t,
                                 double H, double T, double panel);

Estimate integral_I(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H, double T,
                    double panel);
Estimate integral_M(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H,
                    double panel, double* imag_residual = nullptr);
Estimate integral_J(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double t, double H, double T,
                    double panel);

/// Stratified sample heights t_i = T + (i + U_i) T / n.
std::vector<double> stratified_samples(double T, std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;  // standard error
};

struct MomentReport {
  double T = 0, H = 0, X = 0;
  std::size_t samples = 0, excluded = 0;
  MeanEstimate I2;    // (1/T) int |I|^2
  MeanEstimate Leta;  // (1/T) int |L eta^2|^2
  MeanEstimate M2;    // (1/T) int |M|^2
  double rho5 = 0, rho6 = 0, rho7 = 0;
  double rho5_err = 0, rho6_err = 0, rho7_err = 0;
  std::size_t chain_holds = 0;  // windows with J >= e^{-3}(H - |M|)
  std::size_t dominance_holds = 0;  // windows with J >= |I|
  double max_quadrature_error = 0.0;
  std::vector<double> t;  // sample heights
  std::vector<WindowIntegrals> windows;
  std::vector<double> leta2;  // |L eta^2|^2 at each t
};

/// Mean squares over stratified windows in [T, 2T] and their normalized ratios.
MomentReport moment_suite(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, const MomentConfig& cfg);

/// (1/T) int_T^{2T} |L eta^2 (sigma + i t) - 1|^2 dt by stratified sampling.
MeanEstimate j_sigma(const EvalContext& ctx, std::size_t j, const MollifierTable& mt, double sigma, double T,
                     std::size_t samples, std::uint64_t seed);

/// Least-squares slope of log J_sigma against sigma.
double log_linear_slope(const std::vector<double>& sigma, const std::vector<double>& values);

}  // namespace hecke
