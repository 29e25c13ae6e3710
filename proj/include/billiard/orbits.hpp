#pragma once

#include <cstdint>
#include <vector>

#include "billiard/elliptic.hpp"
#include "billiard/geometry.hpp"

namespace billiard::orbits {

struct OrbitConfig {
    // Sweeps are cheap; on ellipses the maximizers form a Poncelet family and
    // the ascent creeps along that flat direction, so the budget is generous.
    int max_iters = 4000;
    double grad_tol = 1e-10;   // converged when sup|grad F| <= grad_tol * perimeter
    int n_restarts = 3;        // random phase restarts beyond the aligned start
    std::uint64_t seed = 0;    // restart phase generator seed
};

/// A (p,q)-periodic billiard trajectory of maximal perimeter. Angles are the
/// normal angles of the reflection points, strictly increasing in the lift
/// with total increase 2 pi p.
struct PeriodicOrbit {
    int p;
    int q;
    std::vector<double> angles;
    double perimeter;
    double residual;  // max |incidence - reflection| angle over the vertices
    bool converged;
    std::vector<double> history;  // perimeter after each ascent sweep (best start)
};

/// Maximizes the cyclic perimeter functional
///   F(psi_1..psi_q) = sum |P(psi_{i+1}) - P(psi_i)|
/// over ordered lifts of winding 2 pi p by monotone cyclic coordinate ascent;
/// each 1-D subproblem is solved by grid bracketing, golden-section and a
/// derivative root polish.
PeriodicOrbit maximize_orbit(const geom::Domain& domain, int p, int q,
                             const OrbitConfig& cfg = {});

/// beta(p/q) = -L_{p/q}/q from a converged maximal orbit.
double beta_rational(const geom::Domain& domain, int p, int q, const OrbitConfig& cfg = {});

struct PonceletReport {
    double spread;          // max - min perimeter over the started polygons
    double residual;        // max |psi_q - psi_0 - 2 pi p| closure defect
    double mean_perimeter;
};

/// Closure check for the rational caustic: from n_starts base angles, iterate
/// the tangency-angle map q times; on an ellipse every polygon closes with the
/// same perimeter.
PonceletReport poncelet_spread(const geom::Ellipse& E, int p, int q, int n_starts);

}  // namespace billiard::orbits
