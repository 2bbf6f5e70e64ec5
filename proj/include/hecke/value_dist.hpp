#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/arith.hpp"
#include "hecke/lfunc.hpp"

namespace hecke {

/// Re sum_{p < z} r(p) p^{-1/2 - i t}.
double prime_sum(const CoefficientTable& table, const Sieve& sieve, double t, std::uint64_t z);

/// Target distribution function int_{-inf}^u e^{-pi v^2} dv.
double target_cdf(double u);

struct HistogramBin {
  double lo, hi;
  double mass;         // empirical
  double target_mass;  // from target_cdf; edge bins include the tails
};

struct DistReport {
  double T = 0;
  std::size_t requested = 0, samples = 0, clipped = 0, resampled = 0;
  double denominator = 0;  // sqrt((n_j + n_j') pi log log T)
  double ks = 0;
  std::vector<HistogramBin> histogram;
  std::vector<double> values;  // sorted statistic
};

/// Kolmogorov-Smirnov distance of sorted values against target_cdf.
double ks_distance(const std::vector<double>& sorted);

/// Histogram on [-range, range] with bins equal bins; the outer bins absorb the tails.
std::vector<HistogramBin> make_histogram(const std::vector<double>& values, std::size_t bins, double range = 1.6);

/// (log|L_j| - log|L_k|) / sqrt((n_j + n_k) pi log log T) at t uniform in [T, 2T].
/// ctx must hold both tables (indices a, b). Samples where either value clips are redrawn at most
/// three times and then excluded.
DistReport clt_histogram(const EvalContext& ctx, std::size_t a, std::size_t b, int n_a, int n_b, double T,
                         std::size_t samples, std::size_t bins, std::uint64_t seed);

/// (1/H) int_t^{t+H} log|L_j(1/2+iu)| du with composite Gauss-Legendre.
double delta_average(const EvalContext& ctx, std::size_t j, double t, double H, std::size_t panels);

enum class MomentMode { PrimeSum, Window };

struct Moment2kReport {
  double value = 0.0;
  double se = 0.0;
  std::size_t samples = 0, clipped = 0;
  double z = 0.0, H = 0.0;
};

/// Monte Carlo mean over t in [T, 2T] of |log|L(1/2+it)| - Re sum_{p<z} r(p)p^{-1/2-it}|^{2k} (PrimeSum)
/// or |Delta(t,H) - log|L(1/2+i(t+u))||^{2k} with u uniform in [0, H] (Window).
/// z = 0 selects T^{1/(4k)}; H = 0 selects 1/log T.
Moment2kReport moment_2k(const EvalContext& ctx, std::size_t j, const CoefficientTable& table, double T, double z,
                         int k, std::size_t samples, MomentMode mode, std::uint64_t seed, double H = 0.0);

/// Raw per-sample statistics behind moment_2k (before the power), for monotonicity checks.
std::vector<double> moment_statistics(const EvalContext& ctx, std::size_t j, const CoefficientTable& table, double T,
                                      double z, std::size_t samples, MomentMode mode, std::uint64_t seed,
                                      double H = 0.0);

struct OrthogonalityResult {
  double value = 0.0;
  double predicted = 0.0;
  double residual = 0.0;
};

/// sum_{p <= z} (r(p) - r'(p))^2 / p against (n + n') log log z.
OrthogonalityResult orthogonality_sum(const CoefficientTable& a, const CoefficientTable& b, int n_a, int n_b,
                                      const Sieve& sieve, std::uint64_t z);

}  // namespace hecke
