#include <cmath>
#include <random>

#include "doctest.h"
#include "hecke/error.hpp"
#include "hecke/selberg_sums.hpp"
#include "oracles.hpp"

using namespace hecke;

namespace {

CoefficientTable& tab() {
  static CoefficientTable t = [] {
    FieldData f = build_field(47);
    return r_coefficients(f, characters(f)[1], 1, 20000);
  }();
  return t;
}

}  // namespace

TEST_SUITE("selberg_sums") {
  TEST_CASE("X = 1 is the single term") {
    SumConfig c{1.0, 0.1};
    CHECK(selberg_sum_brute(c, tab()) == 1.0);
    CHECK(selberg_sum_decomposed(c, tab()) == 1.0);
  }

  TEST_CASE("regrouped sum against the literal quadruple loop") {
    for (double X : {4.0, 9.0}) {
      for (double th : {0.0, 0.25}) {
        SumConfig c{X, th};
        SumWeights w = sum_weights(c, tab());
        Sieve sv(100);
        KFunction K(tab(), sv, 1.0 - th, 1e-13);
        double lit = oracle::selberg_literal(w.beta, w.n, th, [&](std::uint64_t m) { return K(m); });
        CHECK(selberg_sum_brute(c, tab()) == doctest::Approx(lit).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("brute and decomposed agree") {
    for (double X : {10.0, 25.0, 60.0})
      for (double th : {0.0, 0.125, 0.25}) {
        SumConfig c{X, th};
        double b = selberg_sum_brute(c, tab()), d = selberg_sum_decomposed(c, tab());
        CHECK_MESSAGE(std::abs(b - d) <= 1e-6 * std::abs(b), "X=" << X << " theta=" << th);
      }
  }

  TEST_CASE("cap and parameter checks") {
    SumConfig c{250.0, 0.0};
    try {
      selberg_sum_brute(c, tab());
      FAIL("accepted X above the cap");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("term evaluations") != std::string::npos);
    }
    CHECK_THROWS_AS(selberg_sum_brute(SumConfig{10.0, 0.3}, tab()), DomainError);
    CHECK_THROWS_AS(selberg_sum_brute(SumConfig{0.5, 0.0}, tab()), DomainError);
  }

  TEST_CASE("mobius identity") {
    Sieve sv(10000);
    KFunction K(tab(), sv, 1.0 - 0.2, 1e-14);
    auto q1 = mobius_K_identity({3, 5, 7, 11}, K, sv);
    CHECK(q1.q == 1);
    CHECK(q1.lhs == doctest::Approx(K(33) * K(35)).epsilon(1e-15));
    CHECK(q1.terms == 1);
    auto prime = mobius_K_identity({7, 7, 3, 2}, K, sv);  // P = 14, Q = 21 -> q = 7
    CHECK(prime.q == 7);
    CHECK(prime.terms == 3);
    std::mt19937_64 g(12345);
    std::uniform_int_distribution<std::uint64_t> small(1, 60), large(1, 10000);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      std::array<std::uint64_t, 4> nu;
      for (auto& v : nu) v = (i % 2) ? small(g) : large(g);
      auto r = mobius_K_identity(nu, K, sv);
      worst = std::max(worst, r.residual / (1.0 + std::abs(r.lhs)));
    }
    CHECK(worst < 1e-9);
    CHECK_THROWS_AS(mobius_K_identity({0, 1, 1, 1}, K, sv), DomainError);
  }

  TEST_CASE("weighted sum at X = 3 by hand") {
    Sieve sv(10);
    double th = 0.1, ga = 0.2;
    KFunction K(tab(), sv, 1.0 - th, 1e-13);
    auto alpha = alpha_coefficients(tab(), 3);
    double want = std::log(3.0) + alpha[2] * K(2) * std::pow(2.0, ga - 1) * std::log(1.5);
    auto w = s_theta_weighted(3.0, ga, 1, th, tab());
    CHECK(w.sum == doctest::Approx(want).epsilon(1e-13));
    CHECK(w.envelope == doctest::Approx(std::pow(3.0, ga) * std::sqrt(std::log(3.0))));
    auto c = s_theta_weighted(30.0, ga, 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29ull, th, tab());
    CHECK(c.sum == doctest::Approx(std::log(30.0)));
    CHECK_THROWS_AS(s_theta_weighted(2.0, ga, 1, th, tab()), DomainError);
    CHECK_THROWS_AS(s_theta_weighted(10.0, 0.3, 1, th, tab()), DomainError);
  }

  TEST_CASE("smoothing identity") {
    std::mt19937_64 g(99);
    std::uniform_real_distribution<double> lx(std::log(4.0), std::log(15000.0)), u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      double X = std::exp(lx(g));
      double A = std::pow(std::sqrt(X), u(g));
      auto r = smoothing_identity_check(X, A, 0.25 * u(g), 1 + (i % 3) * 6, 0.25 * u(g), tab());
      CHECK(r.residual < 1e-9 * (1.0 + std::abs(r.lhs)));
    }
    auto one = smoothing_identity_check(3.0, 1.6, 0.1, 1, 0.1, tab());  // X/A < 2
    CHECK(one.lhs == doctest::Approx(1.0));
    CHECK(one.rhs == doctest::Approx(1.0));
    auto a1 = smoothing_identity_check(500.0, 1.0, 0.1, 1, 0.1, tab());
    CHECK(a1.residual < 1e-9);
    CHECK_THROWS_AS(smoothing_identity_check(100.0, 20.0, 0.1, 1, 0.1, tab()), DomainError);
  }
}
