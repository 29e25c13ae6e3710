#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "billiard/numerics.hpp"

namespace billiard::rotclass {

/// A solution of tan(n x) = n tan(x) in (0, pi/2). Angles x = pi rho at which
/// non-circular domains can carry constant-angle invariant curves.
struct GutkinRoot {
    int n;
    double x;
    double residual;  // |tan(n x) - n tan(x)| at the returned root
};

/// All solutions in (0, pi/2), by sign-change scan between consecutive poles
/// of tan(n x) followed by bracketed refinement. Empty for |n| in {2, 3}.
std::vector<GutkinRoot> gutkin_roots(int n);

struct DiophantineWitness {
    long long m;
    long long n;
    double ratio;  // |n rho - m| n^sigma / (nu |m|); < 1 means violation
};

struct DiophantineResult {
    double nu;
    double sigma;
    long long checked_up_to;
    bool pass;  // verdict is always "up to N", never absolute
    std::optional<DiophantineWitness> violation;
    std::optional<DiophantineWitness> worst;  // smallest margin ratio seen
};

/// Checks |n rho - m| >= nu |m| n^{-sigma} for all n <= N against the two
/// integers adjacent to n rho (any other m satisfies the bound trivially for
/// nu < 1, since |n rho - m| > 1/2 >= nu |m| n^{-sigma} can only fail when
/// |m| n^{-sigma} > 1/(2nu), impossible for the non-adjacent m of interest
/// once nu < 1 and m <= n rho + 1).
DiophantineResult diophantine_check(double rho, double nu, double sigma, long long N);

struct RationalApprox {
    long long p;
    long long q;
};

struct GutkinVerdict {
    int checked_up_to;    // n_max
    bool free;            // min distance to any root exceeds 1e-10
    int nearest_n;        // 0 when no roots exist at all below n_max
    double nearest_x;
    double min_distance;
};

struct ClassifyParams {
    double nu = 0.05;
    double sigma = 3.0;
    long long N = 100000;
    int n_max = 20;
    // Reconstruction cap: at 1e-12 tolerance, denominators past ~1e4 start
    // matching the convergents of genuine irrationals.
    long long q_max = 10000;
    bool gutkin_literal = false;  // compare rho itself instead of the angle pi*rho
};

struct RotationClass {
    double value;
    std::optional<RationalApprox> rational;
    GutkinVerdict gutkin;
    DiophantineResult diophantine;
};

/// Rationality by continued-fraction reconstruction (denominator <= q_max,
/// tolerance 1e-12), Gutkin freeness of the angle pi*rho up to n_max, and the
/// finite Diophantine check. A detected rational always fails the Diophantine
/// condition with witness (p, q).
RotationClass classify_rotation(double rho, const ClassifyParams& params = {});

}  // namespace billiard::rotclass
