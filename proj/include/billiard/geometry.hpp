#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "billiard/numerics.hpp"

namespace billiard::geom {

/// Ellipse x^2/a^2 + y^2/b^2 = 1 with semi-axes a >= b > 0, centered at the
/// origin, axes on the coordinate axes. Support function
/// h(psi) = a sqrt(1 - e^2 sin^2 psi).
struct Ellipse {
    double a = 1.0;
    double b = 1.0;

    double e2() const { return 1.0 - (b * b) / (a * a); }
    double eccentricity() const { return std::sqrt(e2()); }
};

/// One Fourier mode of a support function: c cos(k psi) + s sin(k psi).
struct Harmonic {
    int k = 2;
    double c = 0.0;
    double s = 0.0;
};

/// Strictly convex domain given by a truncated Fourier series of its support
/// function, h(psi) = a0 + sum_k (c_k cos k psi + s_k sin k psi). k = 1 modes
/// are translations and are rejected on construction paths.
struct SupportDomain {
    double a0 = 1.0;
    std::vector<Harmonic> harmonics;

    /// Certified lower bound a0 - sum (k^2-1)(|c|+|s|) for the radius of
    /// curvature; positive value proves strict convexity.
    double curvature_radius_bound() const;
};

using Domain = std::variant<Ellipse, SupportDomain>;

void validate(const Ellipse& e);        // a >= b > 0
void validate(const SupportDomain& d);  // harmonic indices k >= 2
void validate(const Domain& d);

/// Support function value and its first two derivatives at angle psi.
struct SupportJet {
    double h;
    double dh;
    double d2h;
};

SupportJet support_eval(const Ellipse& e, double psi);
SupportJet support_eval(const SupportDomain& d, double psi);
SupportJet support_eval(const Domain& d, double psi);

struct Point {
    double x;
    double y;
};

/// Boundary point whose outward normal makes angle psi with the x-axis:
/// (h cos - h' sin, h sin + h' cos).
Point boundary_point(const Domain& d, double psi);

/// Perimeter int_0^{2pi} h dpsi by periodic quadrature.
double perimeter(const Domain& d, const num::Tolerance& tol = {});

struct ConvexityReport {
    bool ok;
    double min_radius;  // min over psi of h + h''
    double psi_at_min;
};

/// Samples the radius of curvature h + h'' on a 4096-point grid and refines
/// the minimum locally; ok iff the refined minimum is positive.
ConvexityReport validate_convex(const Domain& d);

}  // namespace billiard::geom
