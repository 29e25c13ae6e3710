#include "billiard/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace billiard::orbits {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using geom::Point;

double dist(const Point& u, const Point& v) {
    return std::hypot(u.x - v.x, u.y - v.y);
}

struct Workspace {
    const geom::Domain& domain;
    int p, q;
    std::vector<double> psi;
    std::vector<Point> pts;

    Workspace(const geom::Domain& d, int p_, int q_) : domain(d), p(p_), q(q_) {
        psi.resize(q);
        pts.resize(q);
    }

    void set_initial(double phase) {
        for (int i = 0; i < q; ++i) {
            psi[i] = kTwoPi * p * i / q + phase;
            pts[i] = geom::boundary_point(domain, psi[i]);
        }
    }

    double lifted(int i) const {  // psi with the winding lift applied
        const int n = static_cast<int>(psi.size());
        int j = ((i % n) + n) % n;
        const int wraps = (i - j) / n;
        return psi[j] + kTwoPi * p * wraps;
    }

    Point point_at(int i) const {
        const int n = static_cast<int>(psi.size());
        return pts[((i % n) + n) % n];
    }

    double perimeter() const {
        double L = 0.0;
        for (int i = 0; i < q; ++i) L += dist(point_at(i), point_at(i + 1));
        return L;
    }

    // dF/dpsi_i = rho(psi_i) * (u_in - u_out) . tangent(psi_i)
    double gradient(int i) const {
        const Point P = point_at(i);
        const Point A = point_at(i - 1);
        const Point B = point_at(i + 1);
        const double lin = dist(A, P), lout = dist(P, B);
        if (lin == 0.0 || lout == 0.0) return 0.0;
        const geom::SupportJet j = geom::support_eval(domain, psi[i]);
        const double tx = -std::sin(psi[i]), ty = std::cos(psi[i]);
        const double uin = ((P.x - A.x) * tx + (P.y - A.y) * ty) / lin;
        const double uout = ((B.x - P.x) * tx + (B.y - P.y) * ty) / lout;
        return (j.h + j.d2h) * (uin - uout);
    }

    double max_gradient() const {
        double g = 0.0;
        for (int i = 0; i < q; ++i) g = std::max(g, std::abs(gradient(i)));
        return g;
    }

    double reflection_residual() const {
        double r = 0.0;
        for (int i = 0; i < q; ++i) {
            const Point P = point_at(i);
            const Point A = point_at(i - 1);
            const Point B = point_at(i + 1);
            const double lin = dist(A, P), lout = dist(P, B);
            if (lin == 0.0 || lout == 0.0) continue;
            const double tx = -std::sin(psi[i]), ty = std::cos(psi[i]);
            const double cin = std::clamp(((P.x - A.x) * tx + (P.y - A.y) * ty) / lin, -1.0, 1.0);
            const double cout =
                std::clamp(((B.x - P.x) * tx + (B.y - P.y) * ty) / lout, -1.0, 1.0);
            r = std::max(r, std::abs(std::acos(cin) - std::acos(cout)));
        }
        return r;
    }

    // maximize |P(x)-A| + |B-P(x)| over x in (lo,hi), the open arc between the
    // neighbouring vertices: coarse grid bracket, then a root polish of f' so
    // the landed vertex carries a machine-level reflection defect
    void update_vertex(int i) {
        const double lo = lifted(i - 1);
        const double hi = lifted(i + 1);
        const Point A = point_at(i - 1);
        const Point B = point_at(i + 1);
        const auto f = [&](double x) {
            const Point P = geom::boundary_point(domain, x);
            return dist(A, P) + dist(P, B);
        };
        const auto df = [&](double x) {
            const Point P = geom::boundary_point(domain, x);
            const geom::SupportJet j = geom::support_eval(domain, x);
            const double lin = dist(A, P), lout = dist(P, B);
            if (lin == 0.0 || lout == 0.0) return 0.0;
            const double tx = -std::sin(x), ty = std::cos(x);
            const double uin = ((P.x - A.x) * tx + (P.y - A.y) * ty) / lin;
            const double uout = ((B.x - P.x) * tx + (B.y - P.y) * ty) / lout;
            return (j.h + j.d2h) * (uin - uout);
        };
        num::Tolerance rt;
        rt.rel = 5e-15;
        rt.abs = 1e-15;

        const int K = 24;
        const double margin = 1e-9 * (hi - lo);
        double best_x = psi[i], best_f = f(psi[i]);
        for (int k = 0; k <= K; ++k) {
            const double x = lo + margin + (hi - lo - 2.0 * margin) * k / K;
            const double fx = f(x);
            if (fx > best_f) {
                best_f = fx;
                best_x = x;
            }
        }

        // f' changes sign across the maximum; try the one-cell window first
        const double cell = (hi - lo) / K;
        double a = std::max(lo + margin, best_x - cell);
        double b = std::min(hi - margin, best_x + cell);
        if (df(a) > 0.0 && df(b) < 0.0) {
            const double xr = num::find_root(df, a, b, rt);
            if (f(xr) >= best_f - 1e-12 * (1.0 + best_f)) {
                psi[i] = xr;
                pts[i] = geom::boundary_point(domain, xr);
                return;
            }
        }

        // fallback: golden section, then another polish attempt on the bracket
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = f(x1), f2 = f(x2);
        for (int it = 0; it < 80 && b - a > 1e-9; ++it) {
            if (f1 > f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = f(x2);
            }
        }
        double xr = 0.5 * (a + b);
        const double wl = std::max(lo + margin, xr - 64.0 * (b - a));
        const double wr = std::min(hi - margin, xr + 64.0 * (b - a));
        if (df(wl) > 0.0 && df(wr) < 0.0) xr = num::find_root(df, wl, wr, rt);
        if (f(xr) < best_f) xr = best_x;
        psi[i] = xr;
        pts[i] = geom::boundary_point(domain, xr);
    }
};

void check_pq(int p, int q) {
    if (q < 2) throw DomainError("orbit: q must be >= 2");
    if (p < 1) throw DomainError("orbit: p must be >= 1");
    if (std::gcd(p, q) != 1) throw DomainError("orbit: p/q must be in lowest terms");
    if (2 * p > q) throw DomainError("orbit: rotation number p/q must be <= 1/2");
}

}  // namespace

PeriodicOrbit maximize_orbit(const geom::Domain& domain, int p, int q,
                             const OrbitConfig& cfg) {
    check_pq(p, q);
    if (!(cfg.grad_tol > 0.0)) throw DomainError("OrbitConfig: grad_tol must be positive");
    geom::validate(domain);
    if (const auto* sd = std::get_if<geom::SupportDomain>(&domain)) {
        if (sd->curvature_radius_bound() <= 0.0 && !geom::validate_convex(domain).ok)
            throw DomainError("maximize_orbit: domain is not strictly convex");
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);

    PeriodicOrbit best{};
    best.p = p;
    best.q = q;
    best.perimeter = -1.0;

    for (int r = 0; r <= cfg.n_restarts; ++r) {
        const double phase = (r == 0) ? 0.0 : unif(rng);
        Workspace ws(domain, p, q);
        ws.set_initial(phase);

        std::vector<double> history;
        bool converged = false;
        for (int sweep = 0; sweep < cfg.max_iters; ++sweep) {
            for (int i = 0; i < q; ++i) ws.update_vertex(i);
            const double L = ws.perimeter();
            history.push_back(L);
            if (ws.max_gradient() <= cfg.grad_tol * L) {
                converged = true;
                break;
            }
        }

        const double L = ws.perimeter();
        if (L > best.perimeter) {
            best.angles = ws.psi;
            best.perimeter = L;
            best.residual = ws.reflection_residual();
            best.converged = converged;
            best.history = std::move(history);
        }
    }

    // normalize the representative lift: first angle in [0, 2pi)
    const double shift = kTwoPi * std::floor(best.angles.front() / kTwoPi);
    for (double& x : best.angles) x -= shift;
    return best;
}

double beta_rational(const geom::Domain& domain, int p, int q, const OrbitConfig& cfg) {
    const PeriodicOrbit orbit = maximize_orbit(domain, p, q, cfg);
    if (!orbit.converged)
        throw ConvergenceError("beta_rational: orbit maximization did not converge "
                               "(residual " + std::to_string(orbit.residual) + ")",
                               orbit.perimeter, orbit.residual);
    return -orbit.perimeter / q;
}

PonceletReport poncelet_spread(const geom::Ellipse& E, int p, int q, int n_starts) {
    check_pq(p, q);
    if (2 * p == q) throw DomainError("poncelet_spread: p/q must be < 1/2");
    if (n_starts < 1) throw DomainError("poncelet_spread: n_starts must be >= 1");
    const double lam = elliptic::lambda_for_rotation(E, static_cast<double>(p) / q);
    const geom::Domain dom = E;

    double pmin = 0.0, pmax = 0.0, psum = 0.0, rmax = 0.0;
    for (int s = 0; s < n_starts; ++s) {
        const double psi0 = kTwoPi * s / n_starts;
        double psi = psi0;
        std::vector<geom::Point> v;
        v.reserve(q);
        for (int j = 0; j < q; ++j) {
            v.push_back(geom::boundary_point(dom, psi));
            psi = elliptic::advance(E, lam, psi);
        }
        double L = 0.0;
        for (int j = 0; j < q; ++j) L += dist(v[j], v[(j + 1) % q]);
        const double res = std::abs(psi - psi0 - kTwoPi * p);
        pmin = (s == 0) ? L : std::min(pmin, L);
        pmax = (s == 0) ? L : std::max(pmax, L);
        psum += L;
        rmax = std::max(rmax, res);
    }
    return {pmax - pmin, rmax, psum / n_starts};
}

}  // namespace billiard::orbits
