#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hecke/error.hpp"
#include "hecke/value_dist.hpp"
#include "oracles.hpp"

using namespace hecke;

TEST_SUITE("value_dist") {
  TEST_CASE("prime sums") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    auto t = r_coefficients(f, ch[1], 1, 5000);
    Sieve sv(5000);
    CHECK(prime_sum(t, sv, 3.0, 2) == 0.0);
    double want = 0;
    for (std::uint64_t p = 2; p < 5000; ++p)
      if (oracle::is_prime(p)) want += t.r[p] / std::sqrt(double(p));
    CHECK(prime_sum(t, sv, 0.0, 5000) == doctest::Approx(want).epsilon(1e-12));
    auto t2 = t;
    for (auto& x : t2.r) x *= 2;
    CHECK(prime_sum(t2, sv, 17.0, 3000) == doctest::Approx(2 * prime_sum(t, sv, 17.0, 3000)));
  }

  TEST_CASE("target distribution") {
    CHECK(target_cdf(0.0) == doctest::Approx(0.5));
    CHECK(target_cdf(5.0) == doctest::Approx(1.0));
    // midpoint rule for int_{-inf}^{0.4} e^{-pi v^2} dv
    double s = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      double v = -8.0 + 8.4 * (i + 0.5) / n;
      s += std::exp(-3.14159265358979 * v * v);
    }
    CHECK(target_cdf(0.4) == doctest::Approx(s * 8.4 / n).epsilon(1e-9));
  }

  TEST_CASE("KS distance and histogram") {
    CHECK(ks_distance({0.0}) == doctest::Approx(0.5));
    std::vector<double> v;
    for (int i = 0; i < 999; ++i) v.push_back((i - 499) / 300.0);
    auto h = make_histogram(v, 10);
    double m = 0, tm = 0;
    for (const auto& b : h) {
      m += b.mass;
      tm += b.target_mass;
    }
    CHECK(m == doctest::Approx(1.0));
    CHECK(tm == doctest::Approx(1.0));
    CHECK(h.front().lo == doctest::Approx(-1.6));
    CHECK(make_histogram({}, 4).size() == 4);
  }

  TEST_CASE("clt statistic is antisymmetric") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    std::size_t N = required_terms_range(47, EvalOptions{}, 0.5, 0.5, 201.0);
    auto a = r_coefficients(f, ch[1], 1, N);
    auto b = r_coefficients(f, ch[2], 2, N);
    EvalContext ab(f, {&a, &b}, {false, false});
    EvalContext ba(f, {&b, &a}, {false, false});
    auto r1 = clt_histogram(ab, 0, 1, 1, 1, 100.0, 200, 8, 5);
    auto r2 = clt_histogram(ba, 0, 1, 1, 1, 100.0, 200, 8, 5);
    REQUIRE(r1.values.size() == r2.values.size());
    std::size_t n = r1.values.size();
    for (std::size_t i = 0; i < n; ++i) CHECK(r1.values[i] == doctest::Approx(-r2.values[n - 1 - i]));
    CHECK(r1.ks >= 0.0);
    CHECK(r1.ks <= 1.0);
    CHECK(r1.clipped < 10);
    EvalContext aa(f, {&a, &a}, {false, false});
    CHECK_THROWS_AS(clt_histogram(aa, 0, 1, 1, 1, 100.0, 10, 8, 1), DomainError);
    CHECK_THROWS_AS(clt_histogram(ab, 0, 1, 1, 1, 50.0, 10, 8, 1), DomainError);
  }

  TEST_CASE("orthogonality sum") {
    // 3 is inert for 31, so p <= 3 leaves the single p = 2 term
    FieldData f = build_field(31);
    auto ch = characters(f);
    auto a = r_coefficients(f, ch[0], 0, 100);
    auto b = r_coefficients(f, ch[1], 1, 100);
    Sieve sv(100);
    auto r = orthogonality_sum(a, b, 2, 1, sv, 3);
    CHECK(r.value == doctest::Approx((a.r[2] - b.r[2]) * (a.r[2] - b.r[2]) / 2));
    CHECK(r.predicted == doctest::Approx(3 * std::log(std::log(3.0))));
    CHECK_THROWS_AS(orthogonality_sum(b, b, 1, 1, sv, 50), DomainError);
  }

  TEST_CASE("moment statistics and delta average") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    std::size_t N = required_terms_range(47, EvalOptions{}, 0.5, 0.5, 220.0);
    auto a = r_coefficients(f, ch[1], 1, N);
    EvalContext ctx(f, a, false);
    double d = delta_average(ctx, 0, 150.0, 1e-7, 1);
    CHECK(d == doctest::Approx(log_abs_l(ctx, 0, 150.0).value).epsilon(1e-5));
    const int n = 4000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += log_abs_l(ctx, 0, 150.0 + 0.3 * (i + 0.5) / n).value;
    // the window holds a zero, so the log singularity limits convergence
    CHECK(delta_average(ctx, 0, 150.0, 0.3, 512) == doctest::Approx(s / n).epsilon(2e-3));
    CHECK(delta_average(ctx, 0, 150.0, 0.3, 64) == doctest::Approx(delta_average(ctx, 0, 150.0, 0.3, 512)).epsilon(2e-3));
    auto m1 = moment_2k(ctx, 0, a, 100.0, 0.0, 1, 64, MomentMode::PrimeSum, 3);
    auto m1b = moment_2k(ctx, 0, a, 100.0, 0.0, 1, 64, MomentMode::PrimeSum, 3);
    CHECK(m1.value == m1b.value);
    CHECK(m1.z == doctest::Approx(std::pow(100.0, 0.25)));
    auto stats = moment_statistics(ctx, 0, a, 100.0, 0.0, 64, MomentMode::Window, 3);
    std::vector<double> big;
    for (double x : stats)
      if (std::isfinite(x) && std::abs(x) >= 1.0) big.push_back(std::abs(x));
    if (!big.empty()) {
      double p2 = 0, p4 = 0;
      for (double x : big) {
        p2 += x * x;
        p4 += x * x * x * x;
      }
      CHECK(p4 >= p2);
    }
    CHECK_THROWS_AS(moment_2k(ctx, 0, a, 100.0, 0.0, 4, 8, MomentMode::PrimeSum, 1), DomainError);
  }
}
