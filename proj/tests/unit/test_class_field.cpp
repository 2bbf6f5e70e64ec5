#include <complex>

#include "doctest.h"
#include "hecke/class_field.hpp"
#include "hecke/error.hpp"
#include "oracles.hpp"

using namespace hecke;

TEST_SUITE("class_field") {
  TEST_CASE("reduced forms of 23") {
    auto f = reduced_forms(23);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == Form{1, 1, 6});
    CHECK(f[1] == Form{2, 1, 3});
    CHECK(f[2] == Form{2, -1, 3});
  }

  TEST_CASE("discriminant checks") {
    CHECK(discriminant_problem(23).empty());
    CHECK(discriminant_problem(4).empty());
    CHECK(discriminant_problem(24).empty());
    CHECK_FALSE(discriminant_problem(25).empty());  // -25 = 3 mod 4
    CHECK_FALSE(discriminant_problem(12).empty());  // 4 * (-3) is not fundamental
    CHECK_FALSE(discriminant_problem(63).empty());  // not squarefree
    CHECK_FALSE(discriminant_problem(2).empty());
    CHECK_THROWS_AS(build_field(25), DomainError);
  }

  TEST_CASE("class numbers against the analytic formula") {
    for (std::uint64_t D = 3; D <= 1500; ++D) {
      if (!discriminant_problem(static_cast<std::int64_t>(D)).empty()) continue;
      FieldData f = build_field(static_cast<std::int64_t>(D));
      CHECK_MESSAGE(static_cast<long>(f.h) == oracle::class_number(D), "D = " << D);
    }
  }

  TEST_CASE("group structure") {
    CHECK(build_field(23).invariant_factors == std::vector<std::uint64_t>{3});
    CHECK(build_field(47).invariant_factors == std::vector<std::uint64_t>{5});
    CHECK(build_field(71).invariant_factors == std::vector<std::uint64_t>{7});
    CHECK(build_field(84).invariant_factors == std::vector<std::uint64_t>{2, 2});
    CHECK(build_field(56).invariant_factors == std::vector<std::uint64_t>{4});
    CHECK(build_field(4).w == 4);
    CHECK(build_field(3).w == 6);
    FieldData f = build_field(47);
    for (std::size_t i = 0; i < f.h; ++i) {
      CHECK(f.mul(i, 0) == i);
      CHECK(f.mul(i, f.inverse(i)) == 0);
      Form g = f.forms[i];
      CHECK(f.index_of(reduce(Form{g.a, -g.b, g.c})) == f.inverse(i));
    }
  }

  TEST_CASE("composition matches the table") {
    FieldData f = build_field(71);
    for (std::size_t i = 0; i < f.h; ++i)
      for (std::size_t j = 0; j < f.h; ++j) CHECK(f.index_of(compose(f.forms[i], f.forms[j])) == f.mul(i, j));
  }

  TEST_CASE("characters are homomorphisms and orthogonal") {
    for (std::int64_t D : {23, 47, 84, 56, 71, 31}) {
      FieldData f = build_field(D);
      auto ch = characters(f);
      REQUIRE(ch.size() == f.h);
      for (auto v : ch[0].values) CHECK(std::abs(v - 1.0) < 1e-15);
      for (std::size_t a = 0; a < f.h; ++a) {
        for (std::size_t i = 0; i < f.h; ++i)
          for (std::size_t j = 0; j < f.h; ++j)
            CHECK(std::abs(ch[a].values[f.mul(i, j)] - ch[a].values[i] * ch[a].values[j]) < 1e-12);
        for (std::size_t b = 0; b < f.h; ++b) {
          std::complex<double> s = 0;
          for (std::size_t i = 0; i < f.h; ++i) s += ch[a].values[i] * std::conj(ch[b].values[i]);
          CHECK(std::abs(s - (a == b ? double(f.h) : 0.0)) < 1e-10);
        }
        std::size_t c = ch[a].conjugate_index;
        for (std::size_t i = 0; i < f.h; ++i) CHECK(std::abs(ch[c].values[i] - std::conj(ch[a].values[i])) < 1e-12);
        CHECK(ch[a].is_complex == (c != a));
      }
    }
  }

  TEST_CASE("kronecker against Euler's criterion") {
    for (std::int64_t D : {3, 4, 23, 47, 84, 56, 71, 31, 995}) {
      if (!discriminant_problem(D).empty()) continue;
      FieldData f = build_field(D);
      for (std::uint64_t n = 1; n <= 3000; ++n)
        CHECK_MESSAGE(kronecker_chi(f, n) == oracle::kronecker_neg(D, n), "D=" << D << " n=" << n);
    }
  }
}
