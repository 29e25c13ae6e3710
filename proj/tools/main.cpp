// billiard: CLI over the Mather beta library. Subcommands mirror the library
// surface; all numeric output is fixed-format JSON/CSV at 17 significant
// digits so identical invocations are byte-identical.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "billiard/domain_io.hpp"
#include "billiard/elliptic.hpp"
#include "billiard/orbits.hpp"
#include "billiard/rigidity.hpp"
#include "billiard/rotation_class.hpp"

namespace {

using namespace billiard;

constexpr double kPi = 3.14159265358979323846;

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

// minimal ordered JSON writer; values arrive pre-rendered
struct Json {
    std::vector<std::pair<std::string, std::string>> kv;
    Json& put(const std::string& k, const std::string& raw) {
        kv.emplace_back(k, raw);
        return *this;
    }
    Json& num(const std::string& k, double v) { return put(k, num17(v)); }
    Json& integer(const std::string& k, long long v) { return put(k, std::to_string(v)); }
    Json& str(const std::string& k, const std::string& s) { return put(k, quoted(s)); }
    Json& boolean(const std::string& k, bool b) { return put(k, b ? "true" : "false"); }
    std::string render() const {
        std::string out = "{";
        for (std::size_t i = 0; i < kv.size(); ++i) {
            if (i) out += ",";
            out += quoted(kv[i].first) + ":" + kv[i].second;
        }
        return out + "}";
    }
};

void emit(const Json& j) { std::cout << j.render() << "\n"; }

int fail(const std::string& type, const std::string& message, int code) {
    Json err;
    err.put("error", Json{}.str("type", type).str("message", message).render());
    emit(err);
    return code;
}

struct RhoArg {
    double value = 0.0;
    std::optional<std::pair<int, int>> fraction;  // set when given as "p/q"
};

RhoArg parse_rho(const std::string& text) {
    RhoArg out;
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const int p = std::stoi(text.substr(0, slash));
            const int q = std::stoi(text.substr(slash + 1));
            if (q <= 0) throw std::invalid_argument("denominator");
            out.fraction = {p, q};
            out.value = static_cast<double>(p) / q;
        } else {
            std::size_t used = 0;
            out.value = std::stod(text, &used);
            if (used != text.size()) throw std::invalid_argument("trailing characters");
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--rho", "expected a decimal or a p/q literal: " + text);
    }
    return out;
}

geom::Ellipse parse_ellipse(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("--ellipse", "expected \"a,b\": " + text);
    double a = 0.0, b = 0.0;
    try {
        a = std::stod(text.substr(0, comma));
        b = std::stod(text.substr(comma + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--ellipse", "expected \"a,b\": " + text);
    }
    geom::Ellipse E{a, b};
    geom::validate(E);
    return E;
}

// small-denominator rational from a decimal rho, for routing decimal inputs
// to the variational method
std::optional<std::pair<int, int>> rational_of(const RhoArg& rho) {
    if (rho.fraction) return rho.fraction;
    for (long long q = 1; q <= 1000; ++q) {
        const double pn = rho.value * q;
        const long long pi = std::llround(pn);
        if (pi >= 1 && std::abs(pn - pi) <= 1e-12 * q)
            return std::pair<int, int>{static_cast<int>(pi), static_cast<int>(q)};
    }
    return std::nullopt;
}

num::Tolerance global_tol;

int run_beta(const std::string& domain_file, const std::string& rho_text,
             const std::string& method) {
    const geom::Domain dom = geom::load_domain_file(domain_file);
    const RhoArg rho = parse_rho(rho_text);
    const bool is_ellipse = std::holds_alternative<geom::Ellipse>(dom);

    std::string chosen = method;
    if (chosen.empty()) chosen = is_ellipse ? "caustic" : "variational";

    Json out;
    if (chosen == "caustic") {
        if (!is_ellipse)
            throw DomainError("beta: the caustic method requires an ellipse domain");
        const auto r =
            elliptic::beta_caustic_full(std::get<geom::Ellipse>(dom), rho.value, global_tol);
        out.num("beta", r.beta).str("method", "caustic").num("rho", rho.value);
        out.put("warnings", r.degeneracy_warning
                                ? "[" + quoted("caustic degeneration near rho = 1/2") + "]"
                                : "[]");
    } else if (chosen == "variational") {
        const auto frac = rational_of(rho);
        if (!frac)
            throw DomainError("beta: the variational method needs a rational rho "
                              "(use a p/q literal)");
        const double b = orbits::beta_rational(dom, frac->first, frac->second);
        out.num("beta", b).str("method", "variational").num("rho", rho.value);
        out.put("warnings", "[]");
    } else {
        throw DomainError("beta: unknown method \"" + chosen + "\"");
    }
    emit(out);
    return 0;
}

int run_scan(const std::string& mode, double rho0, double beta0, double perim, double probe,
             double emin, double emax, int steps) {
    if (steps < 1) throw DomainError("scan: steps must be >= 1");
    rigidity::FamilySpec spec;
    if (mode == "isobeta")
        spec.kind = rigidity::IsoBetaFamily{rho0, beta0};
    else if (mode == "perimeter")
        spec.kind = rigidity::ConstPerimeterFamily{perim};
    else
        throw DomainError("scan: mode must be isobeta or perimeter");
    spec.grid.resize(steps);
    for (int i = 0; i < steps; ++i)
        spec.grid[i] = (steps == 1) ? emin : emin + (emax - emin) * i / (steps - 1);

    const auto scan = rigidity::scan_family(spec, probe, global_tol);
    std::cout << "e,a,b,beta,margin\n";
    for (const auto& row : scan.rows)
        std::cout << num17(row.e) << "," << num17(row.a) << "," << num17(row.b) << ","
                  << num17(row.beta) << "," << num17(row.margin) << "\n";

    const char* verdict = scan.verdict == rigidity::Monotonicity::strictly_decreasing
                              ? "strictly_decreasing"
                          : scan.verdict == rigidity::Monotonicity::strictly_increasing
                              ? "strictly_increasing"
                              : "none";
    std::cerr << "monotonicity: " << verdict
              << " (min |margin| = " << num17(scan.min_abs_margin) << ")\n";
    return 0;
}

int run_classify(const std::string& rho_text, double nu, double sigma, long long N,
                 int nmax) {
    const RhoArg rho = parse_rho(rho_text);
    rotclass::ClassifyParams params;
    params.nu = nu;
    params.sigma = sigma;
    params.N = N;
    params.n_max = nmax;
    const auto c = rotclass::classify_rotation(rho.value, params);

    Json out;
    out.num("value", c.value);
    out.put("rational",
            c.rational
                ? Json{}.integer("p", c.rational->p).integer("q", c.rational->q).render()
                : "null");
    out.put("gutkin", Json{}
                          .integer("checked_up_to", c.gutkin.checked_up_to)
                          .boolean("free", c.gutkin.free)
                          .integer("nearest_n", c.gutkin.nearest_n)
                          .num("nearest_x", c.gutkin.nearest_x)
                          .num("min_distance", c.gutkin.min_distance)
                          .render());
    Json dio;
    dio.num("nu", c.diophantine.nu)
        .num("sigma", c.diophantine.sigma)
        .integer("checked_up_to", c.diophantine.checked_up_to)
        .str("verdict", c.diophantine.pass ? "pass-up-to-N" : "fail");
    dio.put("violation", c.diophantine.violation
                             ? Json{}
                                   .integer("m", c.diophantine.violation->m)
                                   .integer("n", c.diophantine.violation->n)
                                   .num("ratio", c.diophantine.violation->ratio)
                                   .render()
                             : "null");
    dio.put("worst", c.diophantine.worst
                         ? Json{}
                               .integer("m", c.diophantine.worst->m)
                               .integer("n", c.diophantine.worst->n)
                               .num("ratio", c.diophantine.worst->ratio)
                               .render()
                         : "null");
    out.put("diophantine", dio.render());
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mather beta function of convex billiards: exact elliptic caustics, "
                 "variational orbits, rigidity scans and recovery"};
    app.require_subcommand(1);
    double tol_override = 0.0;
    app.add_option("--tol", tol_override, "override the relative tolerance globally");

    auto* beta = app.add_subcommand("beta", "Mather beta at a rotation number");
    std::string beta_domain, beta_rho, beta_method;
    beta->add_option("--domain", beta_domain, "domain JSON file")->required();
    beta->add_option("--rho", beta_rho, "rotation number (decimal or p/q)")->required();
    beta->add_option("--method", beta_method, "caustic|variational");

    auto* rotation = app.add_subcommand("rotation", "rotation number of a caustic");
    std::string rot_ellipse;
    double rot_lambda = 0.0;
    rotation->add_option("--ellipse", rot_ellipse, "semi-axes a,b")->required();
    rotation->add_option("--lambda", rot_lambda, "caustic parameter")->required();

    auto* caustic = app.add_subcommand("caustic", "caustic data for a rotation number");
    std::string cau_ellipse, cau_rho;
    caustic->add_option("--ellipse", cau_ellipse, "semi-axes a,b")->required();
    caustic->add_option("--rho", cau_rho, "rotation number (decimal or p/q)")->required();

    auto* scan = app.add_subcommand("scan", "beta along an ellipse family (CSV)");
    std::string scan_mode;
    double scan_rho0 = 0.0, scan_beta0 = -1.0, scan_perimeter = 0.0, scan_probe = 0.0;
    double scan_emin = 0.0, scan_emax = 0.9;
    int scan_steps = 10;
    scan->add_option("--mode", scan_mode, "isobeta|perimeter")->required();
    scan->add_option("--rho0", scan_rho0, "pinned rotation number (isobeta)");
    scan->add_option("--beta0", scan_beta0, "pinned beta value (isobeta)");
    scan->add_option("--perimeter", scan_perimeter, "common perimeter (perimeter mode)");
    scan->add_option("--probe", scan_probe, "probe rotation number")->required();
    scan->add_option("--emin", scan_emin, "grid start");
    scan->add_option("--emax", scan_emax, "grid end");
    scan->add_option("--steps", scan_steps, "grid size");

    auto* recover = app.add_subcommand("recover", "ellipse from spectral data");
    std::string rec_rho0, rec_rho1, rec_rho;
    double rec_beta0 = 0.0, rec_beta1 = 0.0, rec_beta = 0.0, rec_perimeter = 0.0;
    recover->add_option("--rho0", rec_rho0, "first rotation number");
    recover->add_option("--beta0", rec_beta0, "beta at rho0");
    recover->add_option("--rho1", rec_rho1, "second rotation number");
    recover->add_option("--beta1", rec_beta1, "beta at rho1");
    recover->add_option("--rho", rec_rho, "rotation number (with --perimeter)");
    recover->add_option("--beta", rec_beta, "beta at rho (with --perimeter)");
    recover->add_option("--perimeter", rec_perimeter, "perimeter (with --rho/--beta)");

    auto* bbs = app.add_subcommand("bbs", "slack of the disk-maximality bound");
    std::string bbs_domain, bbs_rho;
    bbs->add_option("--domain", bbs_domain, "domain JSON file")->required();
    bbs->add_option("--rho", bbs_rho, "rotation number (decimal or p/q)")->required();

    auto* deriv = app.add_subcommand("derivative", "first variation of beta");
    std::string der_ellipse, der_rho;
    double der_da = 0.0, der_db = 0.0;
    deriv->add_option("--ellipse", der_ellipse, "semi-axes a,b")->required();
    deriv->add_option("--da", der_da, "d a / d tau")->required();
    deriv->add_option("--db", der_db, "d b / d tau")->required();
    deriv->add_option("--rho", der_rho, "rotation number")->required();

    auto* classify = app.add_subcommand("classify", "rotation-number classification");
    std::string cls_rho;
    double cls_nu = 0.05, cls_sigma = 3.0;
    long long cls_N = 100000;
    int cls_nmax = 20;
    classify->add_option("--rho", cls_rho, "rotation number (decimal or p/q)")->required();
    classify->add_option("--nu", cls_nu, "Diophantine nu in (0,1)");
    classify->add_option("--sigma", cls_sigma, "Diophantine sigma > 5/2");
    classify->add_option("--N", cls_N, "Diophantine check depth");
    classify->add_option("--nmax", cls_nmax, "Gutkin scan depth");

    auto* diagnose = app.add_subcommand("diagnose", "invariant-curve diagnostics");
    std::string dia_ellipse, dia_rho;
    diagnose->add_option("--ellipse", dia_ellipse, "semi-axes a,b")->required();
    diagnose->add_option("--rho", dia_rho, "rotation number")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n(run with --help)\n";
        return 1;
    }

    if (tol_override != 0.0) {
        global_tol.rel = tol_override;
        global_tol.abs = tol_override * 0.01;
    }

    try {
        if (*beta) return run_beta(beta_domain, beta_rho, beta_method);

        if (*rotation) {
            const geom::Ellipse E = parse_ellipse(rot_ellipse);
            const double rho = elliptic::rotation_number(E, rot_lambda, 0.0, global_tol);
            emit(Json{}.num("rho", rho));
            return 0;
        }

        if (*caustic) {
            const geom::Ellipse E = parse_ellipse(cau_ellipse);
            const RhoArg rho = parse_rho(cau_rho);
            const double lam = elliptic::lambda_for_rotation(E, rho.value, global_tol);
            const auto data = elliptic::caustic_data(E, lam);
            emit(Json{}.num("lambda", data.lambda).num("J", data.J).num("k2", data.k2));
            return 0;
        }

        if (*scan)
            return run_scan(scan_mode, scan_rho0, scan_beta0, scan_perimeter, scan_probe,
                            scan_emin, scan_emax, scan_steps);

        if (*recover) {
            Json out;
            if (!rec_rho0.empty() || !rec_rho1.empty()) {
                if (rec_rho0.empty() || rec_rho1.empty())
                    throw DomainError("recover: two-value form needs --rho0/--beta0 "
                                      "and --rho1/--beta1");
                const double r0 = parse_rho(rec_rho0).value;
                const double r1 = parse_rho(rec_rho1).value;
                const auto E =
                    rigidity::recover_two_values(r0, rec_beta0, r1, rec_beta1, global_tol);
                out.num("a", E.a).num("b", E.b).num("e", E.eccentricity());
                out.put("residuals",
                        Json{}
                            .num("beta0", std::abs(elliptic::beta_caustic(E, r0) - rec_beta0))
                            .num("beta1", std::abs(elliptic::beta_caustic(E, r1) - rec_beta1))
                            .render());
            } else {
                if (rec_rho.empty() || rec_perimeter <= 0.0)
                    throw DomainError("recover: value+perimeter form needs --rho, --beta "
                                      "and --perimeter");
                const double r = parse_rho(rec_rho).value;
                const auto E =
                    rigidity::recover_value_perimeter(r, rec_beta, rec_perimeter, global_tol);
                out.num("a", E.a).num("b", E.b).num("e", E.eccentricity());
                out.put("residuals",
                        Json{}
                            .num("beta", std::abs(elliptic::beta_caustic(E, r) - rec_beta))
                            .num("perimeter",
                                 std::abs(geom::perimeter(E) - rec_perimeter))
                            .render());
            }
            emit(out);
            return 0;
        }

        if (*bbs) {
            const geom::Domain dom = geom::load_domain_file(bbs_domain);
            const RhoArg rho = parse_rho(bbs_rho);
            const double P = geom::perimeter(dom);
            const double bound = -(P / kPi) * std::sin(kPi * rho.value);
            double slack;
            if (const auto* E = std::get_if<geom::Ellipse>(&dom)) {
                slack = rigidity::bbs_slack(*E, rho.value, global_tol);
            } else {
                const auto frac = rational_of(rho);
                if (!frac)
                    throw DomainError("bbs: general domains need a rational rho "
                                      "(use a p/q literal)");
                slack = rigidity::bbs_slack(dom, frac->first, frac->second);
            }
            emit(Json{}.num("slack", slack).num("perimeter", P).num("disk_bound", bound));
            return 0;
        }

        if (*deriv) {
            const geom::Ellipse E = parse_ellipse(der_ellipse);
            const RhoArg rho = parse_rho(der_rho);
            const auto d = elliptic::beta_derivative(
                elliptic::FamilyPoint{E.a, E.b, der_da, der_db}, rho.value, global_tol);
            const double h = 1e-4;
            const double fd =
                (elliptic::beta_caustic(geom::Ellipse{E.a + h * der_da, E.b + h * der_db},
                                        rho.value, global_tol) -
                 elliptic::beta_caustic(geom::Ellipse{E.a - h * der_da, E.b - h * der_db},
                                        rho.value, global_tol)) /
                (2.0 * h);
            emit(Json{}
                     .num("dbeta", d.dbeta)
                     .num("raw_integral", d.raw_integral)
                     .num("fd_check", fd));
            return 0;
        }

        if (*classify) return run_classify(cls_rho, cls_nu, cls_sigma, cls_N, cls_nmax);

        if (*diagnose) {
            const geom::Ellipse E = parse_ellipse(dia_ellipse);
            const RhoArg rho = parse_rho(dia_rho);
            const auto d = elliptic::curve_diagnostics(E, rho.value, global_tol);
            emit(Json{}
                     .num("rho", d.rho)
                     .num("delta_mean", d.delta_mean)
                     .num("criticality_M", d.criticality_M)
                     .num("criticality_defect", d.criticality_defect)
                     .num("beta", d.beta));
            return 0;
        }
    } catch (const ConvergenceError& e) {
        return fail("convergence", e.what(), 3);
    } catch (const InfeasibleError& e) {
        return fail("infeasible", e.what(), 2);
    } catch (const DomainError& e) {
        return fail("domain", e.what(), 2);
    } catch (const BracketError& e) {
        return fail("bracket", e.what(), 2);
    } catch (const EvaluationError& e) {
        return fail("evaluation", e.what(), 2);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n(run with --help)\n";
        return 1;
    }
    return 1;
}
