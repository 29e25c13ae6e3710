#pragma once

#include <functional>

#include "billiard/errors.hpp"

namespace billiard::num {

/// Convergence control shared by the quadrature and root-finding kernels.
struct Tolerance {
    double rel = 1e-12;
    double abs = 1e-14;
    int max_refinements = 20;

    void validate() const;  // rel >= 16*eps, abs >= 0, max_refinements in [1,30]
};

struct Integral {
    double value;
    double error;     // achieved estimate: |last - previous refinement|
    int evaluations;  // integrand evaluations spent
};

/// Trapezoidal rule on N equispaced nodes, N doubled from 16 until two
/// successive values agree to tol. Spectrally accurate for smooth periodic
/// integrands. Throws ConvergenceError (carrying the last two values) if the
/// refinement budget runs out.
Integral integrate_periodic(const std::function<double(double)>& f, double period,
                            const Tolerance& tol = {});

/// Doubling tanh-sinh quadrature on [a,b]. Nodes near the endpoints are
/// generated as distances from the endpoint, so integrands with a sharp
/// boundary layer at a = 0 are resolved down to the underflow threshold.
Integral integrate_interval(const std::function<double(double)>& f, double a, double b,
                            const Tolerance& tol = {});

/// Bracketed root of a continuous g with g(lo)*g(hi) <= 0, by
/// bisection-safeguarded secant (Illinois weighting). Terminates when the
/// bracket width drops below tol.abs + tol.rel*|x|. Same-signed endpoints
/// trigger an interior sign-change scan (poles are recognized and skipped);
/// BracketError only when the scan also comes up empty.
double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const Tolerance& tol = {});

/// Complete elliptic integral of the second kind, parameter convention
/// E(m) = int_0^{pi/2} sqrt(1 - m sin^2 t) dt, computed by the AGM.
double complete_elliptic_E(double m);

}  // namespace billiard::num
