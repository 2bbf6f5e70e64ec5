#include "hecke/value_dist.hpp"

#include <algorithm>
#include <cmath>

#include "hecke/error.hpp"
#include "hecke/parallel.hpp"
#include "hecke/quadrature.hpp"
#include "hecke/random.hpp"

namespace hecke {

namespace {

const double kPi = std::acos(-1.0);

bool same_l_function(const CoefficientTable& a, const CoefficientTable& b) {
  if (a.D != b.D) return false;
  std::size_t n = std::min(a.N, b.N);
  for (std::size_t i = 1; i <= n; ++i)
    if (a.r[i] != b.r[i]) return false;
  return true;
}

}  // namespace

double prime_sum(const CoefficientTable& table, const Sieve& sieve, double t, std::uint64_t z) {
  if (z > table.N + 1 || z > sieve.limit() + 1) throw DomainError("prime_sum: z beyond table or sieve");
  Compensated s;
  for (std::uint32_t p : sieve.primes()) {
    if (p >= z) break;
    double rp = table.r[p];
    if (rp == 0.0) continue;
    double lp = std::log(static_cast<double>(p));
    s.add(rp * std::cos(t * lp) / std::sqrt(static_cast<double>(p)));
  }
  return s.value();
}

double target_cdf(double u) { return 0.5 * (1.0 + std::erf(std::sqrt(kPi) * u)); }

double ks_distance(const std::vector<double>& sorted) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double F = target_cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
  }
  return d;
}

std::vector<HistogramBin> make_histogram(const std::vector<double>& values, std::size_t bins, double range) {
  if (bins < 1) throw DomainError("histogram: need at least one bin");
  std::vector<HistogramBin> h(bins);
  const double w = 2.0 * range / static_cast<double>(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    h[k].lo = -range + static_cast<double>(k) * w;
    h[k].hi = k + 1 == bins ? range : -range + static_cast<double>(k + 1) * w;
    h[k].mass = 0.0;
    double a = k == 0 ? 0.0 : target_cdf(h[k].lo);
    double b = k + 1 == bins ? 1.0 : target_cdf(h[k].hi);
    h[k].target_mass = b - a;
  }
  if (values.empty()) return h;
  const double unit = 1.0 / static_cast<double>(values.size());
  for (double v : values) {
    double pos = std::floor((v + range) / w);
    std::size_t k = pos < 0.0 ? 0 : std::min(bins - 1, static_cast<std::size_t>(pos));
    h[k].mass += unit;
  }
  return h;
}

DistReport clt_histogram(const EvalContext& ctx, std::size_t a, std::size_t b, int n_a, int n_b, double T,
                         std::size_t samples, std::size_t bins, std::uint64_t seed) {
  if (a == b || same_l_function(ctx.table(a), ctx.table(b)))
    throw DomainError("clt: the two characters give the same L-function");
  if (!(T >= 100.0)) throw DomainError("clt: T must be at least 100");
  if (samples < 1) throw DomainError("clt: need samples");
  DistReport r;
  r.T = T;
  r.requested = samples;
  r.denominator = std::sqrt((n_a + n_b) * kPi * std::log(std::log(T)));
  struct Draw {
    double value = 0.0;
    bool ok = false;
    int redraws = 0;
  };
  auto draws = parallel_map(samples, [&](std::size_t i) {
    Draw d;
    auto g = sample_rng(seed, i, 11);
    for (int attempt = 0; attempt <= 3; ++attempt) {
      double t = T + T * uniform01(g);
      std::vector<LogAbs> v = log_abs_l_all(ctx, t);
      if (!v.at(a).clipped && !v.at(b).clipped) {
        d.value = (v[a].value - v[b].value) / r.denominator;
        d.ok = true;
        d.redraws = attempt;
        return d;
      }
    }
    d.redraws = 3;
    return d;
  });
  for (const Draw& d : draws) {
    r.resampled += static_cast<std::size_t>(d.redraws);
    if (d.ok)
      r.values.push_back(d.value);
    else
      ++r.clipped;
  }
  r.samples = r.values.size();
  std::sort(r.values.begin(), r.values.end());
  r.ks = ks_distance(r.values);
  r.histogram = make_histogram(r.values, bins);
  return r;
}

double delta_average(const EvalContext& ctx, std::size_t j, double t, double H, std::size_t panels) {
  if (!(H > 0.0)) throw DomainError("delta_average: H must be positive");
  QuadRule q = gauss_legendre_composite(t, t + H, panels);
  Compensated s;
  for (std::size_t k = 0; k < q.nodes.size(); ++k) s.add(q.weights[k] * log_abs_l(ctx, j, q.nodes[k]).value);
  return s.value() / H;
}

std::vector<double> moment_statistics(const EvalContext& ctx, std::size_t j, const CoefficientTable& table, double T,
                                      double z, std::size_t samples, MomentMode mode, std::uint64_t seed, double H) {
  if (!(T >= 10.0)) throw DomainError("moment_2k: T must be at least 10");
  if (H <= 0.0) H = 1.0 / std::log(T);
  std::uint64_t zi = static_cast<std::uint64_t>(z);
  Sieve sieve(mode == MomentMode::PrimeSum ? std::max<std::uint64_t>(zi, 2) : 2);
  std::size_t panels = panels_for(0.0, H, 1.0 / (4.0 * std::log(T)));
  auto vals = parallel_map(samples, [&](std::size_t i) {
    auto g = sample_rng(seed, i, 13);
    double t = T + (static_cast<double>(i) + uniform01(g)) * T / static_cast<double>(samples);
    if (mode == MomentMode::PrimeSum) {
      LogAbs l = log_abs_l(ctx, j, t);
      if (l.clipped) return std::nan("");
      return l.value - prime_sum(table, sieve, t, zi);
    }
    double u = H * uniform01(g);
    LogAbs l = log_abs_l(ctx, j, t + u);
    if (l.clipped) return std::nan("");
    return delta_average(ctx, j, t, H, panels) - l.value;
  });
  return vals;
}

Moment2kReport moment_2k(const EvalContext& ctx, std::size_t j, const CoefficientTable& table, double T, double z,
                         int k, std::size_t samples, MomentMode mode, std::uint64_t seed, double H) {
  if (k < 1 || k > 3) throw DomainError("moment_2k: k must be 1, 2 or 3");
  Moment2kReport r;
  r.z = z > 0.0 ? z : std::pow(T, 1.0 / (4.0 * k));
  r.H = H > 0.0 ? H : 1.0 / std::log(T);
  std::vector<double> v = moment_statistics(ctx, j, table, T, r.z, samples, mode, seed, r.H);
  std::vector<double> p;
  for (double x : v) {
    if (std::isnan(x)) {
      ++r.clipped;
      continue;
    }
    p.push_back(std::pow(std::abs(x), 2 * k));
  }
  r.samples = p.size();
  if (p.empty()) return r;
  Compensated s;
  for (double x : p) s.add(x);
  r.value = s.value() / static_cast<double>(p.size());
  if (p.size() > 1) {
    Compensated q;
    for (double x : p) q.add((x - r.value) * (x - r.value));
    r.se = std::sqrt(q.value() / static_cast<double>(p.size() - 1) / static_cast<double>(p.size()));
  }
  return r;
}

OrthogonalityResult orthogonality_sum(const CoefficientTable& a, const CoefficientTable& b, int n_a, int n_b,
                                      const Sieve& sieve, std::uint64_t z) {
  if (same_l_function(a, b)) throw DomainError("orthogonality: the two characters give the same L-function");
  if (z > a.N || z > b.N || z > sieve.limit()) throw DomainError("orthogonality: z beyond table or sieve");
  if (z < 3) throw DomainError("orthogonality: z must be at least 3");
  OrthogonalityResult r;
  Compensated s;
  for (std::uint32_t p : sieve.primes()) {
    if (p > z) break;
    double d = a.r[p] - b.r[p];
    s.add(d * d / static_cast<double>(p));
  }
  r.value = s.value();
  r.predicted = (n_a + n_b) * std::log(std::log(static_cast<double>(z)));
  r.residual = r.value - r.predicted;
  return r;
}

}  // namespace hecke
