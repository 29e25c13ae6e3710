#include "billiard/rigidity.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace billiard::rigidity {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

void check_probe(double rho, const char* who) {
    if (!(rho > 0.0 && rho <= 0.5))
        throw DomainError(std::string(who) + ": rotation number must lie in (0, 1/2]");
}

double beta_of_member(const Ellipse& E, double rho, const num::Tolerance& tol) {
    return elliptic::beta_caustic(E, rho, tol);
}

}  // namespace

Ellipse isobeta_member(double rho0, double c, double e) {
    check_probe(rho0, "isobeta_member");
    if (!(c < 0.0)) throw DomainError("isobeta_member: beta value must be negative");
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("isobeta_member: e must lie in [0, 1)");
    const Ellipse ref{1.0, std::sqrt(1.0 - e * e)};
    const double beta_ref = elliptic::beta_caustic(ref, rho0);
    const double s = c / beta_ref;  // beta is 1-homogeneous under homothety
    return {s * ref.a, s * ref.b};
}

Ellipse perimeter_member(double p, double e) {
    if (!(p > 0.0)) throw DomainError("perimeter_member: perimeter must be positive");
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("perimeter_member: e must lie in [0, 1)");
    const double a = p / (4.0 * num::complete_elliptic_E(e * e));
    return {a, a * std::sqrt(1.0 - e * e)};
}

ScanResult scan_family(const FamilySpec& spec, double probe, const num::Tolerance& tol) {
    check_probe(probe, "scan_family");
    if (spec.grid.empty()) throw DomainError("scan_family: empty eccentricity grid");
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double e = spec.grid[i];
        if (!(e >= 0.0 && e <= kEccentricityMax))
            throw DomainError("scan_family: grid eccentricities must lie in [0, 0.995]");
        if (i > 0 && !(e > spec.grid[i - 1]))
            throw DomainError("scan_family: grid must be strictly increasing");
    }
    if (const auto* iso = std::get_if<IsoBetaFamily>(&spec.kind)) {
        if (probe == iso->rho0)
            throw DomainError("scan_family: probe must differ from the pinned rho0 "
                              "(the scan would be constant by construction)");
    }

    ScanResult out;
    out.rows.reserve(spec.grid.size());
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double e = spec.grid[i];
        const Ellipse E = std::visit(
            [&](const auto& k) -> Ellipse {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, IsoBetaFamily>)
                    return isobeta_member(k.rho0, k.c, e);
                else
                    return perimeter_member(k.p, e);
            },
            spec.kind);
        const double beta = beta_of_member(E, probe, tol);
        ScanRow row{e, E.a, E.b, beta, std::numeric_limits<double>::quiet_NaN()};
        if (i > 0) row.margin = beta - out.rows.back().beta;
        out.rows.push_back(row);
    }

    bool all_neg = true, all_pos = true;
    double min_abs = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        const double m = out.rows[i].margin;
        all_neg = all_neg && (m < 0.0);
        all_pos = all_pos && (m > 0.0);
        min_abs = std::min(min_abs, std::abs(m));
    }
    if (out.rows.size() < 2) {
        out.verdict = Monotonicity::none;
        out.min_abs_margin = 0.0;
    } else {
        out.verdict = all_neg   ? Monotonicity::strictly_decreasing
                      : all_pos ? Monotonicity::strictly_increasing
                                : Monotonicity::none;
        out.min_abs_margin = min_abs;
    }
    return out;
}

Ellipse recover_two_values(double rho0, double c0, double rho1, double c1,
                           const num::Tolerance& tol) {
    check_probe(rho0, "recover_two_values");
    check_probe(rho1, "recover_two_values");
    if (rho0 == rho1)
        throw DomainError("recover_two_values: rotation numbers must be distinct");
    if (!(c0 < 0.0 && c1 < 0.0))
        throw DomainError("recover_two_values: beta values must be negative");

    const auto g = [&](double e) {
        return beta_of_member(isobeta_member(rho0, c0, e), rho1, tol) - c1;
    };
    num::Tolerance rt = tol;
    rt.rel = 1e-12;
    rt.abs = 1e-13;
    double e_star;
    if (std::abs(g(0.0)) <= 1e-9 * std::abs(c1)) {
        e_star = 0.0;  // the disk end of the family; roundoff can push g(0) off zero
    } else {
        try {
            e_star = num::find_root(g, 0.0, kEccentricityMax, rt);
        } catch (const BracketError&) {
            throw InfeasibleError("recover_two_values: the value pair is not realized by "
                                  "any ellipse with e <= 0.995");
        }
    }
    Ellipse E = isobeta_member(rho0, c0, e_star);
    if (E.a < E.b) std::swap(E.a, E.b);  // a >= b representative
    return E;
}

Ellipse recover_value_perimeter(double rho, double c, double p, const num::Tolerance& tol) {
    check_probe(rho, "recover_value_perimeter");
    if (!(c < 0.0)) throw DomainError("recover_value_perimeter: beta value must be negative");
    if (!(p > 0.0)) throw DomainError("recover_value_perimeter: perimeter must be positive");

    const double disk_value = -(p / kPi) * std::sin(kPi * rho);
    if (c > disk_value)
        throw InfeasibleError("recover_value_perimeter: requested beta exceeds the disk "
                              "bound -(p/pi) sin(pi rho); no convex domain attains it");

    const auto g = [&](double e) {
        return beta_of_member(perimeter_member(p, e), rho, tol) - c;
    };
    num::Tolerance rt = tol;
    rt.rel = 1e-12;
    rt.abs = 1e-13;
    double e_star;
    if (std::abs(g(0.0)) <= 1e-9 * std::abs(c)) {
        e_star = 0.0;  // disk equality case of the bound
    } else {
        try {
            e_star = num::find_root(g, 0.0, kEccentricityMax, rt);
        } catch (const BracketError&) {
            throw InfeasibleError("recover_value_perimeter: no ellipse with e <= 0.995 "
                                  "attains the requested value at this perimeter");
        }
    }
    return perimeter_member(p, e_star);
}

double bbs_slack(const Ellipse& E, double rho, const num::Tolerance& tol) {
    check_probe(rho, "bbs_slack");
    const double P = geom::perimeter(E, tol);
    const double bound = (P / kTwoPi) * (-2.0 * std::sin(kPi * rho));
    return bound - elliptic::beta_caustic(E, rho, tol);
}

double bbs_slack(const geom::Domain& domain, int p, int q, const orbits::OrbitConfig& cfg) {
    const double rho = static_cast<double>(p) / q;
    check_probe(rho, "bbs_slack");
    const double P = geom::perimeter(domain);
    const double bound = (P / kTwoPi) * (-2.0 * std::sin(kPi * rho));
    return bound - orbits::beta_rational(domain, p, q, cfg);
}

double kernel_sign(double e, double k0sq, double k1sq) {
    if (!(e >= 0.0 && e < 1.0)) throw DomainError("kernel_sign: e must lie in [0, 1)");
    if (!(k0sq >= 0.0 && k1sq >= 0.0))
        throw DomainError("kernel_sign: kernel moduli must be nonnegative");

    const double e2 = e * e;
    const auto fj = [e2](double ksq, double psi) {
        const double s2 = std::sin(psi) * std::sin(psi);
        return 1.0 / std::sqrt((1.0 - e2 * s2) * (1.0 + ksq * s2));
    };
    // integrands are even and pi-periodic: int_0^{pi/2} = (1/4) int_0^{2pi}
    const auto quarter = [&](const std::function<double(double)>& f) {
        return 0.25 * num::integrate_periodic(f, kTwoPi).value;
    };
    const double I0 = quarter([&](double x) { return fj(k0sq, x); });
    const double I1 = quarter([&](double x) { return fj(k1sq, x); });
    const double Is0 =
        quarter([&](double x) { return std::sin(x) * std::sin(x) * fj(k0sq, x); });
    const double Is1 =
        quarter([&](double x) { return std::sin(x) * std::sin(x) * fj(k1sq, x); });
    return 2.0 * (I0 * Is1 - I1 * Is0);
}

}  // namespace billiard::rigidity
