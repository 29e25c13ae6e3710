#include "billiard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace billiard::geom {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}

double SupportDomain::curvature_radius_bound() const {
    double slack = 0.0;
    for (const auto& m : harmonics)
        slack += (static_cast<double>(m.k) * m.k - 1.0) * (std::abs(m.c) + std::abs(m.s));
    return a0 - slack;
}

void validate(const Ellipse& e) {
    if (!(e.b > 0.0) || !(e.a >= e.b))
        throw DomainError("Ellipse: requires a >= b > 0");
}

void validate(const SupportDomain& d) {
    if (!(d.a0 > 0.0)) throw DomainError("SupportDomain: a0 must be positive");
    for (const auto& m : d.harmonics) {
        if (m.k == 1)
            throw DomainError("SupportDomain: k = 1 harmonics are translations and are rejected");
        if (m.k < 2) throw DomainError("SupportDomain: harmonic index must be >= 2");
    }
}

void validate(const Domain& d) {
    std::visit([](const auto& v) { validate(v); }, d);
}

SupportJet support_eval(const Ellipse& e, double psi) {
    const double sn = std::sin(psi), cs = std::cos(psi);
    const double h = std::sqrt(e.a * e.a * cs * cs + e.b * e.b * sn * sn);
    const double dh = (e.b * e.b - e.a * e.a) * std::sin(2.0 * psi) / (2.0 * h);
    const double d2h = ((e.b * e.b - e.a * e.a) * std::cos(2.0 * psi) - dh * dh) / h;
    return {h, dh, d2h};
}

SupportJet support_eval(const SupportDomain& d, double psi) {
    double h = d.a0, dh = 0.0, d2h = 0.0;
    for (const auto& m : d.harmonics) {
        const double k = m.k;
        const double sn = std::sin(k * psi), cs = std::cos(k * psi);
        h += m.c * cs + m.s * sn;
        dh += k * (-m.c * sn + m.s * cs);
        d2h += -k * k * (m.c * cs + m.s * sn);
    }
    return {h, dh, d2h};
}

SupportJet support_eval(const Domain& d, double psi) {
    return std::visit([psi](const auto& v) { return support_eval(v, psi); }, d);
}

Point boundary_point(const Domain& d, double psi) {
    const SupportJet j = support_eval(d, psi);
    const double sn = std::sin(psi), cs = std::cos(psi);
    return {j.h * cs - j.dh * sn, j.h * sn + j.dh * cs};
}

double perimeter(const Domain& d, const num::Tolerance& tol) {
    validate(d);
    return num::integrate_periodic([&d](double psi) { return support_eval(d, psi).h; },
                                   kTwoPi, tol)
        .value;
}

ConvexityReport validate_convex(const Domain& d) {
    validate(d);
    const auto radius = [&d](double psi) {
        const SupportJet j = support_eval(d, psi);
        return j.h + j.d2h;
    };

    const int n = 4096;
    double best = radius(0.0);
    int best_i = 0;
    for (int i = 1; i < n; ++i) {
        const double r = radius(kTwoPi * i / n);
        if (r < best) {
            best = r;
            best_i = i;
        }
    }

    // golden-section refinement around the best grid cell
    double lo = kTwoPi * (best_i - 1) / n;
    double hi = kTwoPi * (best_i + 1) / n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = radius(x1), f2 = radius(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = radius(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = radius(x2);
        }
    }
    double psi_min = 0.5 * (lo + hi);
    double r_min = radius(psi_min);
    if (best < r_min) {  // grid point was already the minimum
        r_min = best;
        psi_min = kTwoPi * best_i / n;
    }
    psi_min = std::fmod(psi_min, kTwoPi);
    if (psi_min < 0.0) psi_min += kTwoPi;
    return {r_min > 0.0, r_min, psi_min};
}

}  // namespace billiard::geom
