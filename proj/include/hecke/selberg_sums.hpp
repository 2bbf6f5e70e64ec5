#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/coefficients.hpp"

namespace hecke {

/// Largest cutoff accepted by the quadruple sums.
inline constexpr double kMaxSelbergX = 200.0;

struct SumConfig {
  double X = 10.0;
  double theta = 0.0;
  double tol = 1e-13;  // K local series

  void validate() const;
  std::uint64_t cutoff() const;
};

/// Precomputed inputs shared by both evaluations of S(theta).
struct SumWeights {
  std::uint64_t n = 0;            // floor(X)
  std::vector<double> beta;       // index 0 unused
  std::vector<double> a;          // a(P) = sum_{v1 v4 = P} beta(v1) beta(v4) / (v1^{1-theta} v4)
  std::vector<std::uint32_t> support;  // P with a(P) != 0
  std::vector<double> K;          // K(m, 1-theta) for m <= n^2
};

SumWeights sum_weights(const SumConfig& cfg, const CoefficientTable& table);

/// S(theta) as a sum over product pairs (v1 v4, v2 v3), each pair carrying its gcd.
double selberg_sum_brute(const SumConfig& cfg, const CoefficientTable& table);

/// S(theta) = sum_{d <= X^2} sum_{m | d} mu(m) (d/m)^{1-theta} g(d, m)^2.
double selberg_sum_decomposed(const SumConfig& cfg, const CoefficientTable& table);

struct IdentityResidual {
  std::uint64_t q = 1;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  std::size_t terms = 0;  // (d, m) pairs with mu(m) != 0
};

/// Both sides of q^{1-theta} K(P/q) K(Q/q) = sum_{d|q} sum_{m|d} mu(m) (d/m)^{1-theta} K(Pm/d) K(Qm/d),
/// with P = v1 v4, Q = v2 v3. Theta is 1 - K.s().
IdentityResidual mobius_K_identity(const std::array<std::uint64_t, 4>& nu, const KFunction& K,
                                   const Sieve& sieve);

struct WeightedSum {
  double sum = 0.0;
  double envelope = 0.0;  // X^gamma sqrt(log X) prod_{p|N} (1 + 1/p)^2
  double ratio = 0.0;
};

/// sum_{v <= X, (v,N)=1} alpha(v) K(v, 1-theta) v^{gamma-1} log(X/v).
WeightedSum s_theta_weighted(double X, double gamma, std::uint64_t N, double theta, const CoefficientTable& table,
                             double tol = 1e-13);

struct SmoothingResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// Smoothed sum over v <= X/A with weight L(Av) against (2/log X)(S(X/A) - S(sqrt X / A)).
SmoothingResidual smoothing_identity_check(double X, double A, double gamma, std::uint64_t N, double theta,
                                           const CoefficientTable& table, double tol = 1e-13);

struct BoundRow {
  double X = 0.0;
  double theta = 0.0;
  double S = 0.0;
  double ratio = 0.0;  // S log X / X^{2 theta}
};

/// S(theta) log X / X^{2 theta} over a theta grid, using the decomposed evaluation.
std::vector<BoundRow> bound_shape(double X, const std::vector<double>& thetas, const CoefficientTable& table,
                                  double tol = 1e-13);

}  // namespace hecke
