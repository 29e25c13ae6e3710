#include "billiard/rotation_class.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace billiard::rotclass {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 0.5 * kPi;

double gutkin_fn(int n, double x) { return std::tan(n * x) - n * std::tan(x); }

}  // namespace

std::vector<GutkinRoot> gutkin_roots(int n) {
    if (n < 0) n = -n;  // tan is odd: the equation for -n matches n
    if (n < 2) throw DomainError("gutkin_roots: |n| must be >= 2");

    // poles of tan(n x) inside (0, pi/2)
    std::vector<double> cuts;
    cuts.push_back(0.0);
    for (int j = 0;; ++j) {
        const double pole = (2.0 * j + 1.0) * kPi / (2.0 * n);
        if (pole >= kHalfPi) break;
        cuts.push_back(pole);
    }
    cuts.push_back(kHalfPi);

    const long grid_total = 10000L * n;
    std::vector<GutkinRoot> roots;
    num::Tolerance rt;
    rt.rel = 5e-15;
    rt.abs = 1e-15;

    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        const double lo = cuts[seg], hi = cuts[seg + 1];
        const long m = std::max(8L, static_cast<long>(grid_total * (hi - lo) / kHalfPi));
        const double pad = (hi - lo) * 1e-9;  // stay off the tan asymptotes
        double xp = lo + pad;
        double fp = gutkin_fn(n, xp);
        for (long i = 1; i <= m; ++i) {
            const double x = lo + pad + (hi - lo - 2.0 * pad) * i / m;
            const double fx = gutkin_fn(n, x);
            if (std::isfinite(fp) && std::isfinite(fx) && fp * fx < 0.0) {
                const double r = num::find_root([n](double t) { return gutkin_fn(n, t); },
                                                xp, x, rt);
                roots.push_back({n, r, std::abs(gutkin_fn(n, r))});
            }
            xp = x;
            fp = fx;
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const GutkinRoot& u, const GutkinRoot& v) { return u.x < v.x; });
    return roots;
}

DiophantineResult diophantine_check(double rho, double nu, double sigma, long long N) {
    if (!(nu > 0.0 && nu < 1.0))
        throw DomainError("diophantine_check: nu must lie in (0, 1)");
    if (!(sigma > 2.5))
        throw DomainError("diophantine_check: sigma must exceed 5/2");
    if (N < 2) throw DomainError("diophantine_check: N must be >= 2");

    DiophantineResult out;
    out.nu = nu;
    out.sigma = sigma;
    out.checked_up_to = N;
    out.pass = true;

    for (long long n = 1; n <= N; ++n) {
        const double x = n * rho;
        const long long mf = static_cast<long long>(std::floor(x));
        const double npow = std::pow(static_cast<double>(n), -sigma);
        for (long long m : {mf, mf + 1}) {
            if (m == 0) continue;  // rhs vanishes, the bound holds trivially
            const double lhs = std::abs(x - static_cast<double>(m));
            const double rhs = nu * std::abs(static_cast<double>(m)) * npow;
            const double ratio = lhs / rhs;
            if (!out.worst || ratio < out.worst->ratio) out.worst = {m, n, ratio};
            if (lhs < rhs && out.pass) {
                out.pass = false;
                out.violation = {m, n, ratio};
            }
        }
    }
    return out;
}

namespace {

std::optional<RationalApprox> reconstruct_rational(double rho, long long q_max,
                                                   double tol) {
    // continued-fraction convergents h_n = a_n h_{n-1} + h_{n-2}
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // (h_{-2}, k_{-2}), (h_{-1}, k_{-1})
    double x = rho;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(x);
        if (fl > 9.0e17) break;
        const long long ai = static_cast<long long>(fl);
        const long long p2 = ai * p1 + p0;
        const long long q2 = ai * q1 + q0;
        if (q2 > q_max || q2 <= 0) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        if (q1 > 0 && std::abs(rho - static_cast<double>(p1) / q1) <= tol)
            return RationalApprox{p1, q1};
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace

RotationClass classify_rotation(double rho, const ClassifyParams& params) {
    if (!(rho > 0.0 && rho <= 0.5))
        throw DomainError("classify_rotation: rho must lie in (0, 1/2]");
    if (params.n_max < 2) throw DomainError("classify_rotation: n_max must be >= 2");
    if (params.q_max < 1) throw DomainError("classify_rotation: q_max must be >= 1");

    RotationClass out;
    out.value = rho;
    out.rational = reconstruct_rational(rho, params.q_max, 1e-12);

    const double x = params.gutkin_literal ? rho : kPi * rho;
    GutkinVerdict gv{params.n_max, true, 0, 0.0,
                     std::numeric_limits<double>::infinity()};
    for (int n = 2; n <= params.n_max; ++n) {
        for (const GutkinRoot& r : gutkin_roots(n)) {
            const double d = std::abs(x - r.x);
            if (d < gv.min_distance) {
                gv.min_distance = d;
                gv.nearest_n = n;
                gv.nearest_x = r.x;
            }
        }
    }
    gv.free = gv.min_distance > 1e-10;
    out.gutkin = gv;

    out.diophantine = diophantine_check(rho, params.nu, params.sigma, params.N);
    if (out.rational && out.diophantine.pass) {
        // a rational always violates the condition at n = q even when q > N
        out.diophantine.pass = false;
        out.diophantine.violation = {out.rational->p, out.rational->q, 0.0};
    }
    return out;
}

}  // namespace billiard::rotclass
