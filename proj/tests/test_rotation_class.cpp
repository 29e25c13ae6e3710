#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "billiard/rotation_class.hpp"

using namespace billiard;
using rotclass::ClassifyParams;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kAtanSqrt5 = 1.1502619915109314913;  // root of tan(4x) = 4 tan x
const double kGolden = (3.0 - std::sqrt(5.0)) / 4.0;  // badly approximable irrational
}

TEST_CASE("gutkin_roots: n = 2, 3 empty; n = 4 is arctan sqrt 5") {
    CHECK(rotclass::gutkin_roots(2).empty());
    CHECK(rotclass::gutkin_roots(3).empty());
    auto r4 = rotclass::gutkin_roots(4);
    REQUIRE(r4.size() == 1);
    CHECK(std::abs(r4[0].x - kAtanSqrt5) <= 1e-10);
    CHECK(r4[0].residual <= 1e-12);
    CHECK(rotclass::gutkin_roots(-4).size() == 1);  // odd symmetry in n
    CHECK_THROWS_AS(rotclass::gutkin_roots(1), DomainError);
}

TEST_CASE("gutkin_roots: counts grow like floor((n-2)/2)") {
    for (int n = 4; n <= 12; ++n)
        CHECK(static_cast<int>(rotclass::gutkin_roots(n).size()) == (n - 2) / 2);
}

TEST_CASE("gutkin_roots: residual bound away from the tan poles") {
    for (int n = 4; n <= 7; ++n)
        for (const auto& r : rotclass::gutkin_roots(n)) {
            CHECK(r.residual <= 1e-12);
            CHECK(r.x > 0.0);
            CHECK(r.x < kPi / 2);
        }
}

TEST_CASE("diophantine_check: exact rational annihilates the left side") {
    auto r = rotclass::diophantine_check(1.0 / 3.0, 0.05, 3.0, 100);
    CHECK_FALSE(r.pass);
    REQUIRE(r.violation.has_value());
    CHECK(r.violation->n == 3);
    CHECK(r.violation->m == 1);
}

TEST_CASE("diophantine_check: badly approximable irrational passes to 1e5") {
    auto r = rotclass::diophantine_check(kGolden, 0.05, 3.0, 100000);
    CHECK(r.pass);
    REQUIRE(r.worst.has_value());
    CHECK(r.worst->ratio >= 1.0);
}

TEST_CASE("diophantine_check: verdict monotone in nu and N") {
    // smaller nu never turns pass into fail
    auto strict_ = rotclass::diophantine_check(kGolden, 0.5, 2.6, 2000);
    auto loose = rotclass::diophantine_check(kGolden, 0.01, 2.6, 2000);
    if (strict_.pass) CHECK(loose.pass);
    // larger N never turns fail into pass
    auto shortN = rotclass::diophantine_check(0.25, 0.05, 3.0, 4);
    auto longN = rotclass::diophantine_check(0.25, 0.05, 3.0, 4000);
    CHECK_FALSE(shortN.pass);
    CHECK_FALSE(longN.pass);
}

TEST_CASE("diophantine_check: every rational with denominator <= N fails") {
    for (int q = 2; q <= 50; ++q)
        for (int p = 1; 2 * p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            auto r = rotclass::diophantine_check(static_cast<double>(p) / q, 0.05, 3.0, q);
            CHECK_FALSE(r.pass);
        }
}

TEST_CASE("diophantine_check: parameter validation") {
    CHECK_THROWS_AS(rotclass::diophantine_check(0.3, 0.0, 3.0, 100), DomainError);
    CHECK_THROWS_AS(rotclass::diophantine_check(0.3, 1.0, 3.0, 100), DomainError);
    CHECK_THROWS_AS(rotclass::diophantine_check(0.3, 0.05, 2.0, 100), DomainError);
    CHECK_THROWS_AS(rotclass::diophantine_check(0.3, 0.05, 3.0, 1), DomainError);
}

TEST_CASE("classify_rotation: rational 1/4") {
    auto c = rotclass::classify_rotation(0.25);
    REQUIRE(c.rational.has_value());
    CHECK(c.rational->p == 1);
    CHECK(c.rational->q == 4);
    CHECK_FALSE(c.diophantine.pass);
    CHECK(c.gutkin.free);
    CHECK(c.gutkin.checked_up_to == 20);
}

TEST_CASE("classify_rotation: the Gutkin angle of n = 4 is flagged") {
    const double rho = kAtanSqrt5 / kPi;
    auto c = rotclass::classify_rotation(rho);
    CHECK_FALSE(c.gutkin.free);
    CHECK(c.gutkin.nearest_n == 4);
    CHECK(c.gutkin.min_distance <= 1e-10);

    // under the literal variable convention the same value is unremarkable
    ClassifyParams literal;
    literal.gutkin_literal = true;
    CHECK(rotclass::classify_rotation(rho, literal).gutkin.free);
}

TEST_CASE("classify_rotation: quadratic irrational") {
    ClassifyParams p;
    p.N = 100000;
    auto c = rotclass::classify_rotation(kGolden, p);
    CHECK_FALSE(c.rational.has_value());
    CHECK(c.diophantine.pass);
    CHECK(c.gutkin.free);
}

TEST_CASE("classify_rotation: detected rational forces a Diophantine failure") {
    ClassifyParams p;
    p.N = 5;  // smaller than the denominator below
    auto c = rotclass::classify_rotation(1.0 / 9.0, p);
    REQUIRE(c.rational.has_value());
    CHECK(c.rational->q == 9);
    CHECK_FALSE(c.diophantine.pass);
    REQUIRE(c.diophantine.violation.has_value());
    CHECK(c.diophantine.violation->n == 9);
}

TEST_CASE("classify_rotation: domain checks") {
    CHECK_THROWS_AS(rotclass::classify_rotation(0.0), DomainError);
    CHECK_THROWS_AS(rotclass::classify_rotation(0.51), DomainError);
}
