#include "billiard/elliptic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace billiard::elliptic {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kHalfPi = 0.5 * kPi;

// Caustic engine parametrized by eps = sqrt(1 - lambda/b^2) instead of lambda
// itself: every quantity below stays well conditioned as the caustic
// degenerates (eps -> 0), where lambda would be rounded into b^2.
//
//   sin^2 delta = (1-eps^2)(1 - e^2 sin^2 psi)
//   cos^2 delta = eps^2 + e^2 (1-eps^2) sin^2 psi
struct Caustic {
    double a, b;
    double e2;     // ellipse eccentricity squared
    double eps;    // sqrt(1 - lambda/b^2)
    double eps2;   // eps^2
    double om;     // 1 - eps^2 = lambda/b^2
    double ebar2;  // e2 * om

    Caustic(const Ellipse& E, double eps_, double om_)
        : a(E.a), b(E.b), e2(E.e2()), eps(eps_), eps2(eps_ * eps_), om(om_),
          ebar2(e2 * om_) {}

    // from the caustic parameter; both ratios are formed without cancellation
    static Caustic from_lambda(const Ellipse& E, double lambda) {
        const double b2 = E.b * E.b;
        return Caustic(E, std::sqrt((b2 - lambda) / b2), lambda / b2);
    }

    // from u = -log(eps); reaches eps ~ 1e-150, the smallest whose square is
    // still a normal double
    static Caustic from_log_eps(const Ellipse& E, double u) {
        return Caustic(E, std::exp(-u), -std::expm1(-2.0 * u));
    }

    double sin_delta(double s2) const { return std::sqrt(om * (1.0 - e2 * s2)); }
    double cos_delta(double s2) const { return std::sqrt(eps2 + ebar2 * s2); }
    double delta(double s2) const { return std::atan2(sin_delta(s2), cos_delta(s2)); }
    double weight(double s2) const { return 1.0 / (sin_delta(s2) * cos_delta(s2)); }

    double lambda() const { return b * b * om; }
};

double sin2(double psi) {
    const double s = std::sin(psi);
    return s * s;
}

num::Tolerance quad_tol(const num::Tolerance& tol) {
    num::Tolerance q = tol;
    q.abs = 0.0;  // the caustic integrals scale with 1/eps; relative control only
    return q;
}

// int_0^x w(sin^2 psi) dpsi for x in [0, pi/2]; the invariant-measure peak at
// psi = 0 sits at the left endpoint where tanh-sinh nodes keep full precision.
double weight_partial(const Caustic& C, double x, const num::Tolerance& tol) {
    if (x == 0.0) return 0.0;
    return num::integrate_interval([&C](double psi) { return C.weight(sin2(psi)); }, 0.0,
                                   x, quad_tol(tol))
        .value;
}

double weight_quarter(const Caustic& C, const num::Tolerance& tol) {
    return weight_partial(C, kHalfPi, tol);
}

// Cumulative invariant measure from 0 to psi for psi in [0, pi], using the
// evenness and pi-periodicity of the integrand in sin^2.
double weight_cumulative(const Caustic& C, double Wq, double psi, const num::Tolerance& tol) {
    if (psi <= kHalfPi) return weight_partial(C, psi, tol);
    return 2.0 * Wq - weight_partial(C, kPi - psi, tol);
}

double mu_interval(const Caustic& C, double Wq, double psi0, double psi1,
                   const num::Tolerance& tol) {
    // reduce to r0 in [0, pi); the measure of a full pi-period is 2 Wq
    const double n = std::floor(psi0 / kPi);
    const double r0 = psi0 - n * kPi;
    const double r1 = r0 + (psi1 - psi0);
    if (r1 <= kPi) return weight_cumulative(C, Wq, r1, tol) - weight_cumulative(C, Wq, r0, tol);
    return (2.0 * Wq - weight_cumulative(C, Wq, r0, tol)) +
           weight_cumulative(C, Wq, r1 - kPi, tol);
}

// Circle map step from the minor-axis vertex psi0 = pi/2, solved in the
// shifted variable phi = psi1 - pi so the landing point keeps full precision
// relative to the peak at pi. Returns phi in (-pi/2, pi/2).
double advance_shifted(const Caustic& C, const num::Tolerance& tol) {
    const double d0 = C.delta(1.0);
    const auto g = [&C, d0](double phi) {
        return kHalfPi + phi - d0 - C.delta(sin2(phi));
    };
    num::Tolerance rtol = tol;
    rtol.rel = 5e-15;
    rtol.abs = 1e-15;
    return num::find_root(g, -kHalfPi, kHalfPi, rtol);
}

// Rotation number in the eps-parametrization, base point pi/2:
// rho = mu([pi/2, pi + phi1]) / mu(full) = (Wq + sign(phi1) Ip(|phi1|)) / (4 Wq).
double rho_of(const Caustic& C, const num::Tolerance& tol) {
    const double phi1 = advance_shifted(C, tol);
    const double Wq = weight_quarter(C, tol);
    const double Ip = weight_partial(C, std::abs(phi1), tol);
    return (Wq + (phi1 >= 0.0 ? Ip : -Ip)) / (4.0 * Wq);
}

void check_rho_open(double rho, const char* who) {
    if (!(rho > 0.0 && rho < 0.5))
        throw DomainError(std::string(who) + ": rotation number must lie in (0, 1/2)");
}

// Solve rho_of = rho in u = -log(eps). Covers caustics from lambda ~ 1e-14 b^2
// out to eps ~ 1e-278, far past where lambda itself is representable.
Caustic caustic_for_rotation(const Ellipse& E, double rho, const num::Tolerance& tol) {
    check_rho_open(rho, "lambda_for_rotation");
    const auto g = [&E, rho, &tol](double u) {
        return rho_of(Caustic::from_log_eps(E, u), tol) - rho;
    };
    num::Tolerance rtol = tol;
    rtol.abs = 0.0;
    try {
        const double u = num::find_root(g, 5e-15, 345.0, rtol);
        return Caustic::from_log_eps(E, u);
    } catch (const BracketError&) {
        // rho(u) is monotone, so a failed bracket means the request lies past
        // an endpoint. Approaching 1/2 the caustic parameter closes in on b^2
        // only logarithmically for e > 0, so the far end runs out of double
        // precision.
        throw DomainError("caustic for rotation number " + std::to_string(rho) +
                          ": not attainable in double precision for this "
                          "eccentricity (caustic degeneration near rho = 1/2)");
    }
}

double beta_of(const Caustic& C, const num::Tolerance& tol) {
    const double Wq = weight_quarter(C, tol);
    const double Ih = num::integrate_interval(
                          [&C](double psi) {
                              const double s2 = sin2(psi);
                              return std::sqrt(1.0 - C.e2 * s2) / C.cos_delta(s2);
                          },
                          0.0, kHalfPi, quad_tol(tol))
                          .value;
    return -2.0 * C.a * Ih / Wq;
}

}  // namespace

CausticData caustic_data(const Ellipse& E, double lambda) {
    geom::validate(E);
    const double b2 = E.b * E.b;
    if (!(lambda > 0.0 && lambda < b2))
        throw DomainError("caustic_data: lambda must lie in (0, b^2)");
    CausticData out;
    out.lambda = lambda;
    out.J = std::sqrt(lambda) / (E.a * E.b);
    out.k2 = lambda * (E.a * E.a - b2) / (E.a * E.a * (b2 - lambda));
    out.rho = (lambda <= (1.0 - kLambdaGuard) * b2)
                  ? rotation_number(E, lambda)
                  : std::numeric_limits<double>::quiet_NaN();
    return out;
}

double delta_angle(const Ellipse& E, double lambda, double psi) {
    geom::validate(E);
    const double b2 = E.b * E.b;
    if (!(lambda > 0.0 && lambda < b2))
        throw DomainError("delta_angle: lambda must lie in (0, b^2)");
    const Caustic C = Caustic::from_lambda(E, lambda);
    return C.delta(sin2(psi));
}

double advance(const Ellipse& E, double lambda, double psi0) {
    geom::validate(E);
    const double b2 = E.b * E.b;
    if (!(lambda > 0.0 && lambda < b2))
        throw DomainError("advance: lambda must lie in (0, b^2)");
    const Caustic C = Caustic::from_lambda(E, lambda);
    const double d0 = C.delta(sin2(psi0));
    const auto g = [&C, psi0, d0](double psi) {
        return psi - psi0 - d0 - C.delta(sin2(psi));
    };
    num::Tolerance rtol;
    rtol.rel = 5e-15;
    rtol.abs = 1e-15;
    return num::find_root(g, psi0, psi0 + kPi, rtol);
}

double rotation_number(const Ellipse& E, double lambda, double psi0,
                       const num::Tolerance& tol) {
    geom::validate(E);
    const double b2 = E.b * E.b;
    if (!(lambda > 0.0 && lambda < b2))
        throw DomainError("rotation_number: lambda must lie in (0, b^2)");
    if (lambda > (1.0 - kLambdaGuard) * b2)
        throw DomainError("rotation_number: caustic within guard band of b^2 "
                          "(near-degenerate; no accuracy left in lambda)");
    const Caustic C = Caustic::from_lambda(E, lambda);
    const double psi1 = advance(E, lambda, psi0);
    const double Wq = weight_quarter(C, tol);
    return mu_interval(C, Wq, psi0, psi1, tol) / (4.0 * Wq);
}

double lambda_for_rotation(const Ellipse& E, double rho, const num::Tolerance& tol) {
    geom::validate(E);
    check_rho_open(rho, "lambda_for_rotation");
    const double lam = caustic_for_rotation(E, rho, tol).lambda();
    const double cap = (1.0 - kLambdaGuard) * E.b * E.b;
    if (lam > cap)
        throw DomainError("lambda_for_rotation: rotation number lies past the caustic "
                          "guard band; lambda is not representable this close to b^2");
    return lam;
}

BetaResult beta_caustic_full(const Ellipse& E, double rho, const num::Tolerance& tol) {
    geom::validate(E);
    if (!(rho > 0.0 && rho <= 0.5))
        throw DomainError("beta_caustic: rotation number must lie in (0, 1/2]");
    if (rho == 0.5) return {-2.0 * E.a, E.b * E.b, false};
    const bool warn = rho > 0.5 - 1e-6;
    const Caustic C = caustic_for_rotation(E, rho, tol);
    return {beta_of(C, tol), C.lambda(), warn};
}

DerivativeResult beta_derivative(const FamilyPoint& F, double rho,
                                 const num::Tolerance& tol) {
    const Ellipse E{F.a, F.b};
    geom::validate(E);
    check_rho_open(rho, "beta_derivative");
    const bool warn = rho > 0.5 - 1e-6;
    const Caustic C = caustic_for_rotation(E, rho, tol);
    const double Wq = weight_quarter(C, tol);
    const double Iq = num::integrate_interval(
                          [&C, &F](double psi) {
                              const double s2 = sin2(psi);
                              const double num_ = F.a * F.da * (1.0 - s2) + F.b * F.db * s2;
                              return num_ / (std::sqrt(1.0 - C.e2 * s2) * C.cos_delta(s2));
                          },
                          0.0, kHalfPi, quad_tol(tol))
                          .value;
    // Ctil * raw: Ctil = -2 b/(W a sqrt(b^2-lambda)) with sqrt(b^2-lambda) = b eps
    // and W = 4 Wq; the eps factors cancel against raw = 4 eps Iq.
    const double dbeta = -2.0 * Iq / (F.a * Wq);
    return {dbeta, 4.0 * C.eps * Iq, C.lambda(), warn};
}

CurveDiagnostics curve_diagnostics(const Ellipse& E, double rho, const num::Tolerance& tol) {
    geom::validate(E);
    check_rho_open(rho, "curve_diagnostics");
    const Caustic C = caustic_for_rotation(E, rho, tol);
    const double Wq = weight_quarter(C, tol);

    const double delta_mean = num::integrate_interval(
                                  [&C](double psi) {
                                      const double s2 = sin2(psi);
                                      return C.delta(s2) * C.weight(s2);
                                  },
                                  0.0, kHalfPi, quad_tol(tol))
                                  .value /
                              Wq;

    const double Ic = num::integrate_interval(
                          [&C](double psi) { return 1.0 / C.cos_delta(sin2(psi)); }, 0.0,
                          kHalfPi, quad_tol(tol))
                          .value;
    const double M = Ic / (kTwoPi * Wq);

    // The profile sin(delta) Theta'(psi) = 1/(4 Wq cos delta) is monotone in
    // sin^2 psi, so its extremes sit at psi = 0 and psi = pi/2 exactly.
    const double profile_max = 1.0 / (4.0 * Wq * C.cos_delta(0.0));
    const double profile_min = 1.0 / (4.0 * Wq * C.cos_delta(1.0));
    const double defect = profile_max - profile_min;

    return {rho, delta_mean, M, defect, beta_of(C, tol)};
}

}  // namespace billiard::elliptic
