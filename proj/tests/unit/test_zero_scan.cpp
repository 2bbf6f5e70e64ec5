#include <cmath>

#include "doctest.h"
#include "hecke/error.hpp"
#include "hecke/zero_scan.hpp"

using namespace hecke;

TEST_SUITE("zero_scan") {
  TEST_CASE("combination parsing and validation") {
    auto s = parse_combination("1:1, 2:-0.5");
    REQUIRE(s.chars.size() == 2);
    CHECK(s.chars[1] == 2);
    CHECK(s.coeffs[1] == -0.5);
    CHECK(parse_combination("3").coeffs[0] == 1.0);
    CHECK_THROWS_AS(parse_combination(""), DomainError);
    CHECK_THROWS_AS(parse_combination("a:1"), DomainError);
    FieldData f = build_field(47);
    auto ch = characters(f);
    CHECK_NOTHROW(validate_combination(parse_combination("1:1,2:1"), ch));
    CHECK_THROWS_AS(validate_combination(parse_combination("1:1,1:2"), ch), DomainError);
    CHECK_THROWS_AS(validate_combination(parse_combination("1:1,4:1"), ch), DomainError);  // conjugates
    CHECK_THROWS_AS(validate_combination(parse_combination("1:0"), ch), DomainError);
    CHECK_THROWS_AS(validate_combination(parse_combination("7:1"), ch), DomainError);
  }

  TEST_CASE("first zero of the cubic character of 23") {
    FieldData f = build_field(23);
    auto ch = characters(f);
    Combination c(f, ch, parse_combination("1:1"), 40.0);
    ScanResult r = scan_sign_changes(c, 0.0, 12.0, default_step(12.0, 23), 1e-10);
    REQUIRE(!r.zeros.empty());
    // mpmath root of the eta product L-function (tests/oracles/eta23.py)
    CHECK(std::abs(r.zeros[0].ordinate - 5.11568332881512) < 1e-9);
    for (const auto& z : r.zeros) {
      CHECK(z.f_lo * z.f_hi < 0.0);
      // bisection stops early once F is inside its noise floor
      CHECK(z.width <= 1e-7);
    }
  }

  TEST_CASE("sign changes equal the box count on [0, 40]") {
    FieldData f = build_field(23);
    auto ch = characters(f);
    Combination c(f, ch, parse_combination("1:1"), 40.0);
    ScanResult r = scan_sign_changes(c, 0.0, 40.0, default_step(40.0, 23), 1e-8);
    CountResult box = count_zeros_region(c, -1.0, 2.5, 0.0, 40.0);
    CHECK(static_cast<long>(r.zeros.size()) == box.count);
    CHECK(std::abs(box.winding - std::round(box.winding)) < 0.05);
    AuditResult a = halving_audit(c, r, 1e-8);
    CHECK(a.missed.empty());
    CHECK(a.zeros_half == a.zeros_full);
  }

  TEST_CASE("principal character needs a positive bottom edge") {
    FieldData f = build_field(23);
    auto ch = characters(f);
    Combination c(f, ch, parse_combination("0:1"), 30.0);
    CHECK(c.has_principal());
    CHECK_THROWS_AS(count_zeros_region(c, -1.0, 2.5, 0.0, 30.0), DomainError);
    CountResult r = count_zeros_region(c, -1.0, 2.5, 1.0, 30.0);
    ScanResult s = scan_sign_changes(c, 1.0, 30.0, default_step(30.0, 23), 1e-8);
    CHECK(r.count >= static_cast<long>(s.zeros.size()));
  }

  TEST_CASE("default step and proportion rows") {
    CHECK(default_step(100.0, 47) == doctest::Approx(1.0 / (4.0 * std::log(103.0 * std::sqrt(47.0)))));
    FieldData f = build_field(47);
    auto ch = characters(f);
    Combination c(f, ch, parse_combination("1:1,2:1"), 60.0);
    auto rows = proportion_report(c, {30.0});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].N0 <= rows[0].N_box);
    CHECK(rows[0].normalized == doctest::Approx(rows[0].N0 / (30.0 * std::log(30.0))));
  }

  TEST_CASE("frak F is real on the critical line and matches the fast path") {
    FieldData f = build_field(47);
    auto ch = characters(f);
    Combination c(f, ch, parse_combination("1:1,2:-2"), 300.0);
    for (double t : {3.0, 77.7, 250.0}) {
      CHECK(std::abs(c.frak_F(t) - c.frak_F_fast(t)) < 1e-9);
      CHECK(c.residue(t) < 2e-9);
    }
  }
}
