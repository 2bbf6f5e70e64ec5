#include "doctest.h"
#include "hecke/arith.hpp"
#include "hecke/parallel.hpp"
#include "hecke/random.hpp"
#include "oracles.hpp"

using namespace hecke;

TEST_SUITE("arith") {
  TEST_CASE("sieve tables against trial division") {
    Sieve sv(5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) {
      CHECK(sv.tau(n) == oracle::tau(n));
      if (n >= 2) CHECK(sv.is_prime(n) == oracle::is_prime(n));
    }
    CHECK(sv.mobius(1) == 1);
    CHECK(sv.mobius(30) == -1);
    CHECK(sv.mobius(12) == 0);
  }

  TEST_CASE("factor beyond the table") {
    Sieve sv(1000);
    auto f = sv.factor(999983ull * 7);
    REQUIRE(f.size() == 2);
    CHECK(f[0].first == 7);
    CHECK(f[1].first == 999983);
    CHECK(divisor_count(sv.factor(720720)) == oracle::tau(720720));
    CHECK(divisors(sv.factor(12)) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  }

  TEST_CASE("dirichlet convolution of mu and 1 is the unit") {
    Sieve sv(200);
    std::vector<double> mu(201), one(201, 1.0);
    for (int n = 1; n <= 200; ++n) mu[n] = sv.mobius(n);
    auto e = dirichlet_convolve(mu, one, 200);
    CHECK(e[1] == 1.0);
    for (int n = 2; n <= 200; ++n) CHECK(e[n] == 0.0);
  }

  TEST_CASE("parallel_map keeps index order for any thread count") {
    auto f = [](std::size_t i) {
      auto g = sample_rng(7, i);
      return uniform01(g);
    };
    set_thread_count(1);
    auto a = parallel_map(257, f);
    set_thread_count(4);
    auto b = parallel_map(257, f);
    set_thread_count(0);
    CHECK(a == b);
    for (double x : a) CHECK((x >= 0.0 && x < 1.0));
  }

  TEST_CASE("parallel_map rethrows the lowest failing index") {
    set_thread_count(3);
    try {
      parallel_map(50, [](std::size_t i) -> int {
        if (i == 11 || i == 40) throw std::runtime_error(std::to_string(i));
        return 0;
      });
      FAIL("no exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "11");
    }
    set_thread_count(0);
  }
}
