#pragma once

#include "billiard/geometry.hpp"
#include "billiard/numerics.hpp"

namespace billiard::elliptic {

using geom::Ellipse;

/// One invariant curve of the elliptic billiard: the confocal caustic
/// x^2/(a^2-lambda) + y^2/(b^2-lambda) = 1 with 0 < lambda < b^2, together
/// with its Joachimsthal invariant J = sqrt(lambda)/(ab), the modulus
/// k2 = lambda(a^2-b^2)/(a^2(b^2-lambda)) and its rotation number.
struct CausticData {
    double lambda;
    double J;
    double k2;
    double rho;  // NaN when lambda sits past the rotation-number guard
};

struct FamilyPoint {
    double a;
    double b;
    double da;  // d a / d tau
    double db;  // d b / d tau
};

struct BetaResult {
    double beta;
    double lambda;
    bool degeneracy_warning;  // rho within 1e-6 of 1/2: caustic degenerates
};

struct DerivativeResult {
    double dbeta;
    double raw_integral;  // sign-insensitive positive-kernel form
    double lambda;
    bool degeneracy_warning;
};

struct CurveDiagnostics {
    double rho;
    double delta_mean;          // int_0^1 delta dTheta; equals pi*rho
    double criticality_M;       // mean over psi of sin(delta) Theta'(psi)
    double criticality_defect;  // max - min of the same profile; 0 iff disk
    double beta;
};

// Fraction of b^2 past which the caustic is treated as degenerate.
inline constexpr double kLambdaGuard = 1e-10;

CausticData caustic_data(const Ellipse& E, double lambda);

/// Reflection half-angle delta(psi) = asin(J h(psi)) of the chord tangent to
/// the caustic at the boundary point of normal angle psi.
double delta_angle(const Ellipse& E, double lambda, double psi);

/// Tangency-angle circle map: the unique psi1 in (psi0, psi0 + pi) with
/// psi1 - psi0 = delta(psi0) + delta(psi1).
double advance(const Ellipse& E, double lambda, double psi0);

/// Rotation number of the invariant curve as the invariant-measure ratio
/// mu([psi0, advance(psi0)]) / mu([0, 2pi]), dmu = dpsi/(sin d cos d).
double rotation_number(const Ellipse& E, double lambda, double psi0 = 0.0,
                       const num::Tolerance& tol = {});

/// Inverse of lambda -> rotation_number over (0, (1-kLambdaGuard) b^2).
double lambda_for_rotation(const Ellipse& E, double rho, const num::Tolerance& tol = {});

/// Mather beta at rotation number rho in (0, 1/2]. Exact branch -2a at 1/2;
/// otherwise -2 (int h/cos d dpsi) / (int dpsi/(sin d cos d)) on the caustic
/// with that rotation number. Internally parametrized by
/// eps = sqrt(1 - lambda/b^2) so near-degenerate caustics stay resolvable.
BetaResult beta_caustic_full(const Ellipse& E, double rho, const num::Tolerance& tol = {});

inline double beta_caustic(const Ellipse& E, double rho, const num::Tolerance& tol = {}) {
    return beta_caustic_full(E, rho, tol).beta;
}

/// First variation of beta along a family of ellipses through (a,b) with
/// velocities (da,db):
///   dbeta/dtau = Ctil * int (a da cos^2 + b db sin^2) /
///                sqrt((1-e^2 sin^2)(1+k^2 sin^2)) dpsi,
/// Ctil = -2 b / (W a sqrt(b^2-lambda)) < 0. raw_integral is the integral
/// factor alone.
DerivativeResult beta_derivative(const FamilyPoint& F, double rho,
                                 const num::Tolerance& tol = {});

CurveDiagnostics curve_diagnostics(const Ellipse& E, double rho,
                                   const num::Tolerance& tol = {});

}  // namespace billiard::elliptic
