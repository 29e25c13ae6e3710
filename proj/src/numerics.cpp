#include "billiard/numerics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace billiard::num {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Tolerance::validate() const {
    const double eps = std::numeric_limits<double>::epsilon();
    if (!(rel >= 16.0 * eps))
        throw DomainError("Tolerance.rel must be >= 16*machine-epsilon");
    if (!(abs >= 0.0)) throw DomainError("Tolerance.abs must be >= 0");
    if (max_refinements < 1 || max_refinements > 30)
        throw DomainError("Tolerance.max_refinements must be in [1,30]");
}

Integral integrate_periodic(const std::function<double(double)>& f, double period,
                            const Tolerance& tol) {
    tol.validate();
    if (!(period > 0.0)) throw DomainError("integrate_periodic: period must be positive");

    int n = 16;
    long double sum = 0.0L;
    for (int i = 0; i < n; ++i) sum += f(period * i / n);
    double prev = static_cast<double>(sum) * period / n;
    int evals = n;

    for (int r = 0; r < tol.max_refinements; ++r) {
        // midpoints of the current grid
        long double mids = 0.0L;
        for (int i = 0; i < n; ++i) mids += f(period * (i + 0.5) / n);
        evals += n;
        sum += mids;
        n *= 2;
        const double cur = static_cast<double>(sum) * period / n;
        const double diff = std::abs(cur - prev);
        if (!std::isfinite(cur))
            throw EvaluationError("integrate_periodic: non-finite partial sum");
        if (diff <= tol.abs + tol.rel * std::abs(cur))
            return {cur, diff, evals};
        prev = cur;
    }
    throw ConvergenceError("integrate_periodic: no convergence after max_refinements",
                           prev, prev);
}

namespace {

// One tanh-sinh level: sum of weight*f over nodes t = k*h with k odd (or all k
// when all_k). Node positions are carried as distances from the endpoints so
// that boundary layers at a (or b) survive in full precision when a == 0.
long double de_level_sum(const std::function<double(double)>& f, double a, double b,
                         double h, bool all_k, int& evals) {
    const double L = b - a;
    long double acc = 0.0L;
    const int kmax = static_cast<int>(6.4 / h);
    for (int k = -kmax; k <= kmax; ++k) {
        if (!all_k && (k % 2 == 0)) continue;
        const double t = k * h;
        const double u = 0.5 * kPi * std::sinh(t);
        const double eu = std::exp(-2.0 * std::abs(u));
        const double denom = 1.0 + eu;
        const double wt = 2.0 * kPi * std::cosh(t) * eu / (denom * denom);
        if (wt == 0.0) continue;  // underflow: node indistinguishable from endpoint
        const double d = L * eu / denom;  // distance to the nearer endpoint
        const double x = (u >= 0.0) ? b - d : a + d;
        if (x <= a || x >= b) continue;
        const double fx = f(x);
        if (!std::isfinite(fx))
            throw EvaluationError("integrate_interval: non-finite integrand value");
        acc += static_cast<long double>(wt) * fx;
        ++evals;
    }
    return acc;
}

}  // namespace

Integral integrate_interval(const std::function<double(double)>& f, double a, double b,
                            const Tolerance& tol) {
    tol.validate();
    if (a == b) return {0.0, 0.0, 0};
    if (!(b > a)) throw DomainError("integrate_interval: requires a < b");

    const double half = 0.5 * (b - a);
    double h = 1.0;
    int evals = 0;
    long double acc = de_level_sum(f, a, b, h, /*all_k=*/true, evals);
    double prev = static_cast<double>(acc) * half * h;

    const int max_levels = std::min(tol.max_refinements, 14);
    for (int lev = 1; lev <= max_levels; ++lev) {
        h *= 0.5;
        acc += de_level_sum(f, a, b, h, /*all_k=*/false, evals);
        const double cur = static_cast<double>(acc) * half * h;
        const double diff = std::abs(cur - prev);
        if (lev >= 2 && diff <= tol.abs + tol.rel * std::abs(cur))
            return {cur, diff, evals};
        prev = cur;
    }
    throw ConvergenceError("integrate_interval: no convergence after max refinement levels",
                           prev, prev);
}

namespace {

// Core bracketed iteration; endpoints must already carry a sign change.
double bracketed_root(const std::function<double(double)>& g, double a, double fa, double b,
                      double fb, const Tolerance& tol) {
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        double x = (fb * a - fa * b) / (fb - fa);  // secant through the bracket
        const double mid = 0.5 * (a + b);
        if (!(x > a && x < b) || !std::isfinite(x)) x = mid;
        const double fx = g(x);
        if (!std::isfinite(fx))
            throw EvaluationError("find_root: non-finite function value");
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
            if (side == -1) fb *= 0.5;  // Illinois weighting against stagnation
            side = -1;
        } else {
            b = x;
            fb = fx;
            if (side == +1) fa *= 0.5;
            side = +1;
        }
        if (b - a <= tol.abs + tol.rel * std::abs(0.5 * (a + b)))
            return 0.5 * (a + b);
    }
    throw ConvergenceError("find_root: iteration budget exhausted", 0.5 * (a + b), a);
}

}  // namespace

double find_root(const std::function<double(double)>& g, double lo, double hi,
                 const Tolerance& tol) {
    tol.validate();
    if (!(lo < hi)) throw DomainError("find_root: requires lo < hi");

    const double fa = g(lo), fb = g(hi);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw EvaluationError("find_root: non-finite value at bracket endpoint");
    if (fa == 0.0) return lo;
    if (fb == 0.0) return hi;
    if (fa * fb <= 0.0) return bracketed_root(g, lo, fa, hi, fb, tol);

    // Same-signed endpoints: scan the interior for a sign change before giving
    // up. Cells whose refined candidate does not actually shrink |g| straddle a
    // discontinuity (a pole, not a root) and are skipped.
    for (int cells : {64, 1024}) {
        double xp = lo, fp = fa;
        for (int i = 1; i <= cells; ++i) {
            const double x = lo + (hi - lo) * i / cells;
            const double fx = (i == cells) ? fb : g(x);
            if (std::isfinite(fx) && std::isfinite(fp)) {
                if (fx == 0.0) return x;
                if (fp * fx < 0.0) {
                    const double r = bracketed_root(g, xp, fp, x, fx, tol);
                    const double fr = g(r);
                    if (std::isfinite(fr) &&
                        std::abs(fr) <= std::min(std::abs(fp), std::abs(fx)))
                        return r;
                }
            }
            xp = x;
            fp = fx;
        }
    }
    throw BracketError("find_root: no sign change over [lo,hi]");
}

double complete_elliptic_E(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw DomainError("complete_elliptic_E: parameter m must satisfy 0 <= m < 1");
    if (m == 0.0) return 0.5 * kPi;

    // E = K * (1 - sum 2^{n-1} c_n^2), c_0^2 = m, K = pi/(2 agm)
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double sum = 0.5 * m;
    double pow2 = 0.5;
    for (int it = 0; it < 64; ++it) {
        const double c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        pow2 *= 2.0;
        sum += pow2 * c * c;
        a = an;
        b = bn;
        if (std::abs(c) <= std::numeric_limits<double>::epsilon() * a) break;
    }
    const double K = 0.5 * kPi / a;
    return K * (1.0 - sum);
}

}  // namespace billiard::num
