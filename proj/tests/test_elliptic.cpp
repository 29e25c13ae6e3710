#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "billiard/elliptic.hpp"

using namespace billiard;
using elliptic::FamilyPoint;
using geom::Ellipse;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Frozen reference values for the (2,1) ellipse, computed independently with
// 40-digit arithmetic before the build:
//   rho at lambda = 0.5     : 0.179017960208385201
//   lambda at rho = 1/4     : 0.8 exactly; beta(1/4) = -sqrt5 (vertex rhombus)
//   beta(1/3)               : -2.8436138818830018238
//   beta(0.45)              : -3.65358983848118142
//   beta(0.49)              : -3.93071796769724491
constexpr double kRho21AtHalf = 0.179017960208385201;
constexpr double kBeta21Third = -2.8436138818830018238;
constexpr double kBeta21Quarter = -2.2360679774997896964;
constexpr double kBeta21p45 = -3.65358983848118142;
constexpr double kBeta21p49 = -3.93071796769724491;
}

TEST_CASE("caustic_data: invariants of the confocal caustic") {
    const Ellipse E{2.0, 1.0};
    auto c = elliptic::caustic_data(E, 0.5);
    CHECK(c.J == doctest::Approx(std::sqrt(0.5) / 2.0).epsilon(1e-15));
    CHECK(c.k2 == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(c.rho == doctest::Approx(kRho21AtHalf).epsilon(1e-12));

    auto circ = elliptic::caustic_data(Ellipse{1.0, 1.0}, 0.5);
    CHECK(circ.J == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(circ.k2 == 0.0);

    // pole of k2 as lambda -> b^2
    auto degen = elliptic::caustic_data(E, 1.0 - 1e-12);
    CHECK(degen.k2 > 1e11);
    CHECK(std::isnan(degen.rho));  // past the rotation-number guard

    CHECK_THROWS_AS(elliptic::caustic_data(E, 0.0), DomainError);
    CHECK_THROWS_AS(elliptic::caustic_data(E, 1.0), DomainError);
}

TEST_CASE("delta_angle: circle constancy and plug-in value") {
    const Ellipse circ{1.0, 1.0};
    for (double psi : {0.0, 0.9, 2.2, 5.0})
        CHECK(elliptic::delta_angle(circ, 0.25, psi) ==
              doctest::Approx(kPi / 6).epsilon(1e-14));

    CHECK(elliptic::delta_angle(Ellipse{2.0, 1.0}, 0.5, kPi / 2) ==
          doctest::Approx(std::asin(std::sqrt(0.5) / 2.0)).epsilon(1e-14));
}

TEST_CASE("delta_angle: sin delta = J h and the factorized cosine") {
    const Ellipse E{2.0, 1.0};
    const double lam = 0.37;
    const double J = std::sqrt(lam) / (E.a * E.b);
    for (int i = 0; i <= 64; ++i) {
        const double psi = 2.0 * kPi * i / 64;
        const double d = elliptic::delta_angle(E, lam, psi);
        const double h = geom::support_eval(E, psi).h;
        CHECK(std::abs(std::sin(d) - J * h) <= 1e-13);
        CHECK(std::abs(std::cos(d) - std::sqrt(1.0 - J * J * h * h)) <= 1e-14);
    }
}

TEST_CASE("advance: circle rotations") {
    const Ellipse circ{1.0, 1.0};
    CHECK(elliptic::advance(circ, 0.5, 0.0) == doctest::Approx(kPi / 2).epsilon(1e-13));
    CHECK(elliptic::advance(circ, 0.25, 1.0) ==
          doctest::Approx(1.0 + kPi / 3).epsilon(1e-13));
}

TEST_CASE("rotation_number: circle closed form and glancing limit") {
    const Ellipse circ{1.0, 1.0};
    CHECK(elliptic::rotation_number(circ, 0.5) == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(elliptic::rotation_number(circ, 0.25) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-13));
    CHECK(elliptic::rotation_number(circ, 1e-8) < 1e-3);  // rho -> 0 with lambda
    CHECK_THROWS_AS(elliptic::rotation_number(circ, 1.0 - 1e-12), DomainError);
}

TEST_CASE("rotation_number: base-point independence") {
    const Ellipse E{2.0, 1.0};
    const double base = elliptic::rotation_number(E, 0.5, 0.0);
    CHECK(base == doctest::Approx(kRho21AtHalf).epsilon(1e-12));
    for (int k = 1; k < 8; ++k) {
        const double psi0 = 2.0 * kPi * k / 8.0 + 0.1;
        CHECK(std::abs(elliptic::rotation_number(E, 0.5, psi0) - base) <= 1e-10);
    }
}

TEST_CASE("rotation_number: strictly increasing in lambda") {
    for (const Ellipse& E : {Ellipse{2.0, 1.0}, Ellipse{1.5, 1.0}}) {
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double lam = (E.b * E.b) * i / 51.0;
            const double r = elliptic::rotation_number(E, lam);
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("lambda_for_rotation: circle closed form and round-trips") {
    const Ellipse circ{1.0, 1.0};
    CHECK(elliptic::lambda_for_rotation(circ, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(elliptic::lambda_for_rotation(circ, 1.0 / 6.0) ==
          doctest::Approx(0.25).epsilon(1e-12));

    const Ellipse E{2.0, 1.0};
    CHECK(elliptic::lambda_for_rotation(E, 0.25) == doctest::Approx(0.8).epsilon(1e-12));
    for (double rho : {0.1, 0.3, 0.4}) {
        const double lam = elliptic::lambda_for_rotation(E, rho);
        CHECK(elliptic::rotation_number(E, lam) == doctest::Approx(rho).epsilon(1e-11));
    }
    CHECK_THROWS_AS(elliptic::lambda_for_rotation(E, 0.0), DomainError);
    CHECK_THROWS_AS(elliptic::lambda_for_rotation(E, 0.5), DomainError);
}

TEST_CASE("beta_caustic: disk closed form") {
    for (double R : {1.0, 3.7}) {
        const Ellipse disk{R, R};
        for (double rho : {0.1, 0.25, 1.0 / 3.0, 0.45, 0.49})
            CHECK(std::abs(elliptic::beta_caustic(disk, rho) + 2.0 * R * std::sin(kPi * rho)) <=
                  1e-9);
    }
}

TEST_CASE("beta_caustic: exact branch at rho = 1/2") {
    auto r = elliptic::beta_caustic_full(Ellipse{2.0, 1.0}, 0.5);
    CHECK(r.beta == -4.0);
    CHECK_FALSE(r.degeneracy_warning);
    CHECK(elliptic::beta_caustic(Ellipse{1.3, 0.2}, 0.5) == -2.6);
}

TEST_CASE("beta_caustic: frozen references for the (2,1) ellipse") {
    const Ellipse E{2.0, 1.0};
    CHECK(std::abs(elliptic::beta_caustic(E, 0.25) - kBeta21Quarter) < 1e-11);
    CHECK(std::abs(elliptic::beta_caustic(E, 1.0 / 3.0) - kBeta21Third) < 1e-11);
    CHECK(std::abs(elliptic::beta_caustic(E, 0.45) - kBeta21p45) < 1e-10);
    // deep into the caustic degeneration, reachable only via the eps branch
    CHECK(std::abs(elliptic::beta_caustic(E, 0.49) - kBeta21p49) < 1e-9);
}

TEST_CASE("beta_caustic: scaling law and degeneracy warning") {
    const Ellipse E{1.4, 0.9};
    const double base = elliptic::beta_caustic(E, 0.3);
    for (double s : {0.5, 2.0, 7.3}) {
        const double scaled = elliptic::beta_caustic(Ellipse{s * E.a, s * E.b}, 0.3);
        CHECK(std::abs(scaled - s * base) / std::abs(s * base) < 1e-10);
    }
    // the warning band right below 1/2 is only attainable where the caustic
    // parameter still resolves: disks approach 1/2 polynomially ...
    auto warned = elliptic::beta_caustic_full(Ellipse{1.0, 1.0}, 0.5 - 1e-7);
    CHECK(warned.degeneracy_warning);
    CHECK(std::abs(warned.beta + 2.0 * std::sin(kPi * (0.5 - 1e-7))) <= 1e-9);
    CHECK_FALSE(elliptic::beta_caustic_full(E, 0.45).degeneracy_warning);
    // ... while eccentric ellipses close in only logarithmically and run out
    // of double precision: an explicit error, not a silent wrong answer
    CHECK_THROWS_AS(elliptic::beta_caustic(E, 0.5 - 1e-7), DomainError);
    CHECK_THROWS_AS(elliptic::beta_caustic(E, 0.0), DomainError);
    CHECK_THROWS_AS(elliptic::beta_caustic(E, 0.6), DomainError);
}

TEST_CASE("beta_derivative: homothety returns beta itself") {
    for (double rho : {0.25, 0.3}) {
        auto d = elliptic::beta_derivative(FamilyPoint{2.0, 1.0, 2.0, 1.0}, rho);
        const double beta = elliptic::beta_caustic(Ellipse{2.0, 1.0}, rho);
        CHECK(std::abs(d.dbeta - beta) / std::abs(beta) < 1e-8);
        CHECK(d.raw_integral > 0.0);
    }
    auto z = elliptic::beta_derivative(FamilyPoint{1.0, 1.0, 0.0, 0.0}, 0.25);
    CHECK(z.dbeta == 0.0);
    CHECK(z.raw_integral == 0.0);
}

TEST_CASE("beta_derivative: matches central finite differences") {
    const double h = 1e-4;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.8, 2.5), ue(0.1, 0.9), uv(-1.0, 1.0),
        ur(0.1, 0.42);
    int sign_matches = 0;
    for (int t = 0; t < 10; ++t) {
        const double a = ua(rng);
        const double b = a * std::sqrt(1.0 - ue(rng) * ue(rng));
        const double da = uv(rng), db = uv(rng);
        const double rho = ur(rng);
        auto d = elliptic::beta_derivative(FamilyPoint{a, b, da, db}, rho);
        const double fp = elliptic::beta_caustic(Ellipse{a + h * da, b + h * db}, rho);
        const double fm = elliptic::beta_caustic(Ellipse{a - h * da, b - h * db}, rho);
        const double fd = (fp - fm) / (2.0 * h);
        CHECK(std::abs(d.dbeta - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
        if (d.dbeta == 0.0 ? fd == 0.0 : std::signbit(d.dbeta) == std::signbit(fd))
            ++sign_matches;
    }
    CHECK(sign_matches == 10);
}

TEST_CASE("curve_diagnostics: disk") {
    const Ellipse disk{1.0, 1.0};
    auto d = elliptic::curve_diagnostics(disk, 0.25);
    CHECK(std::abs(d.delta_mean - kPi / 4) <= 1e-12);
    CHECK(d.criticality_defect <= 1e-12);
    // criticality constant recovers beta: beta = -2 M |boundary|
    CHECK(std::abs(d.beta + 2.0 * d.criticality_M * 2.0 * kPi) <= 1e-10);
}

TEST_CASE("curve_diagnostics: ellipse breaks criticality, Jensen identity holds") {
    auto d = elliptic::curve_diagnostics(Ellipse{2.0, 1.0}, 0.25);
    CHECK(std::abs(d.delta_mean - kPi / 4) <= 1e-9);
    CHECK(d.criticality_defect > 1e-3);

    auto near = elliptic::curve_diagnostics(Ellipse{1.0001, 1.0}, 1.0 / 3.0);
    auto nearer = elliptic::curve_diagnostics(Ellipse{1.00001, 1.0}, 1.0 / 3.0);
    CHECK(near.criticality_defect > 1e-12);
    CHECK(nearer.criticality_defect > 1e-12);
    CHECK(nearer.criticality_defect < near.criticality_defect);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.6, 2.8), ue(0.0, 0.9);
    for (int t = 0; t < 10; ++t) {
        const double a = ua(rng);
        const Ellipse E{a, a * std::sqrt(1.0 - ue(rng) * ue(rng))};
        for (double rho : {0.1, 0.2, 0.25, 1.0 / 3.0, 0.4}) {
            auto dg = elliptic::curve_diagnostics(E, rho);
            CHECK(std::abs(dg.delta_mean - kPi * rho) <= 1e-9);
        }
    }
}
