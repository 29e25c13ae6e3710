#pragma once

#include <variant>
#include <vector>

#include "billiard/elliptic.hpp"
#include "billiard/orbits.hpp"

namespace billiard::rigidity {

using geom::Ellipse;

// Search ceiling for eccentricity in the recovery root searches; quadrature
// accuracy degrades as the caustics degenerate past this.
inline constexpr double kEccentricityMax = 0.995;

struct IsoBetaFamily {
    double rho0;  // pinned rotation number
    double c;     // pinned beta value, < 0
};

struct ConstPerimeterFamily {
    double p;  // common perimeter, > 0
};

struct FamilySpec {
    std::variant<IsoBetaFamily, ConstPerimeterFamily> kind;
    std::vector<double> grid;  // strictly increasing eccentricities in [0, kEccentricityMax]
};

struct ScanRow {
    double e;
    double a;
    double b;
    double beta;
    double margin;  // beta difference from the previous row; NaN on the first
};

enum class Monotonicity { strictly_decreasing, strictly_increasing, none };

struct ScanResult {
    std::vector<ScanRow> rows;
    Monotonicity verdict;
    double min_abs_margin;
};

/// The unique ellipse of eccentricity e with beta(rho0) = c, via the
/// 1-homogeneity of beta under homothety.
Ellipse isobeta_member(double rho0, double c, double e);

/// The unique ellipse of perimeter p and eccentricity e: a = p/(4 E(e^2)).
Ellipse perimeter_member(double p, double e);

ScanResult scan_family(const FamilySpec& spec, double probe,
                       const num::Tolerance& tol = {});

/// Recovers the ellipse with beta(rho0) = c0 and beta(rho1) = c1 by a
/// bracketed root search in eccentricity along the iso-beta family of rho0.
Ellipse recover_two_values(double rho0, double c0, double rho1, double c1,
                           const num::Tolerance& tol = {});

/// Recovers the ellipse with perimeter p and beta(rho) = c along the
/// constant-perimeter family, after a feasibility check against the disk bound.
Ellipse recover_value_perimeter(double rho, double c, double p,
                                const num::Tolerance& tol = {});

/// Slack of the disk-maximality inequality,
///   (|dOmega|/2pi)(-2 sin(pi rho)) - beta(rho) >= 0,
/// by the caustic route (ellipses, any rho) ...
double bbs_slack(const Ellipse& E, double rho, const num::Tolerance& tol = {});

/// ... or the variational route (any strictly convex domain, rational rho).
double bbs_slack(const geom::Domain& domain, int p, int q,
                 const orbits::OrbitConfig& cfg = {});

/// Double integral over [0,pi/2]^2 of
///   (sin^2 y - sin^2 x)(f1(y)/f0(y) - f1(x)/f0(x)) f0(x) f0(y)
/// with f_j = 1/sqrt((1-e^2 sin^2)(1+k_j^2 sin^2)); strictly negative when
/// k1sq > k0sq, antisymmetric under swapping the kernels. Evaluated through
/// the single-integral marginals 2(mu0(1) mu1(sin^2) - mu1(1) mu0(sin^2)).
double kernel_sign(double e, double k0sq, double k1sq);

}  // namespace billiard::rigidity
