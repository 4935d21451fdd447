#include "knot/cli.hpp"

#include "knot/acceptance.hpp"
#include "knot/contour.hpp"
#include "knot/errors.hpp"
#include "knot/hankel.hpp"
#include "knot/spectral.hpp"
#include "knot/unroll.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace knot::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json complex_json(cplx z) { return {{"re", number(z.real())}, {"im", number(z.imag())}}; }

struct Document {
    ordered_json params = ordered_json::object();
    ordered_json results = ordered_json::array();
    ordered_json diagnostics = ordered_json::object();
    std::optional<std::string> csv;  // set when the command produced a table
    int exit_code = kOk;
};

struct ContourFlags {
    double rho0 = 1.0;
    double eps = 0.1;
    std::optional<double> r_max;
    int samples = 400;

    void attach(CLI::App* sub) {
        sub->add_option("--rho0", rho0, "loop radius")->capture_default_str();
        sub->add_option("--eps", eps, "ray slope")->capture_default_str();
        sub->add_option("--rmax", r_max, "ray truncation radius (default max(30/kappa, 2 rho0))");
        sub->add_option("--samples", samples, "contour sampling hint")->capture_default_str();
    }

    ContourSpec spec(int N, double kappa) const {
        ContourSpec s{N, rho0, eps, r_max.value_or(std::max(30.0 / kappa, 2.0 * rho0)), samples};
        s.validate();
        return s;
    }
};

void echo_contour(ordered_json& params, const ContourSpec& s) {
    params["rho0"] = s.rho0;
    params["eps"] = s.eps;
    params["rmax"] = s.r_max;
    params["samples"] = s.n_samples;
}

struct NumericsFlags {
    Numerics num;

    void attach(CLI::App* sub) {
        sub->add_option("--rtol", num.rel_tol, "relative step tolerance")->capture_default_str();
        sub->add_option("--atol", num.abs_tol, "absolute step tolerance")->capture_default_str();
        sub->add_option("--max-steps", num.max_steps, "step budget per run")->capture_default_str();
    }

    const Numerics& get() const {
        num.validate();
        return num;
    }
};

void echo_numerics(ordered_json& params, const Numerics& n) {
    params["rtol"] = n.rel_tol;
    params["atol"] = n.abs_tol;
    params["max_steps"] = n.max_steps;
}

double kappa_of(double energy) {
    if (!(energy > 0.0) || !std::isfinite(energy)) throw std::invalid_argument("--energy must be positive");
    return std::sqrt(energy);
}

struct NuRange {
    double lo;
    double hi;
    int n;
};

NuRange parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("--nu expects a:b:n");
    try {
        std::size_t used = 0;
        NuRange r{std::stod(parts[0], &used), 0.0, 0};
        if (used != parts[0].size()) throw std::invalid_argument("");
        r.hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        r.n = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("");
        return r;
    } catch (const std::logic_error&) {
        throw UsageError("--nu expects a:b:n with numeric fields, got '" + text + "'");
    }
}

std::string csv_number(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// ---- commands ----

struct TableCmd {
    int N = 1;
    int m_max = 1;
    std::optional<int> dim;
    std::optional<int> partial;

    Document run() const {
        if (dim.has_value() != partial.has_value()) throw UsageError("--dim and --partial go together");
        Document doc;
        doc.params = {{"N", N}, {"m_max", m_max}};
        if (dim) {
            doc.params["dim"] = *dim;
            doc.params["partial"] = *partial;
        }
        const auto rows = allowed_angular_momenta(N, m_max);
        for (const KnotQuantum& q : rows) {
            ordered_json row = {{"N", q.N}, {"M", q.M}, {"nu", q.nu}, {"ell", q.ell}, {"allowed", q.allowed}};
            if (dim) row["gamma"] = coupling_for_knot(*dim, *partial, q.N, q.M).gamma;
            doc.results.push_back(std::move(row));
        }
        doc.diagnostics["forbidden_M"] = ordered_json::array();
        for (int M = 2 * N; M <= m_max; M += 2 * N) doc.diagnostics["forbidden_M"].push_back(M);
        return doc;
    }
};

struct ShootCmd {
    int N = 1;
    std::optional<double> nu;
    std::optional<int> dim;
    std::optional<int> partial;
    std::optional<double> gamma;
    double energy = 1.0;
    ContourFlags contour;
    NumericsFlags numerics;

    Document run() const {
        const double kappa = kappa_of(energy);
        double order = 0.0;
        Document doc;
        doc.params["N"] = N;
        if (nu) {
            order = *nu;
            doc.params["nu"] = order;
        } else {
            if (!dim || !partial) throw UsageError("shoot needs --nu or --dim/--partial[/--gamma]");
            const PhysicalChannel ch{*dim, *partial, gamma.value_or(0.0), kappa};
            order = effective_order(ch);
            doc.params["dim"] = ch.D;
            doc.params["partial"] = ch.m;
            doc.params["gamma"] = ch.gamma;
            doc.params["nu"] = order;
        }
        doc.params["energy"] = energy;
        const ContourSpec spec = contour.spec(N, kappa);
        echo_contour(doc.params, spec);
        echo_numerics(doc.params, numerics.get());

        const ShootResult r = shoot(order, N, kappa, spec, numerics.get());
        const bool agreement = std::abs(r.residual - r.predicted_residual) <= kQuantizationTolerance;
        doc.results.push_back({{"nu", order},
                               {"N", N},
                               {"kappa", kappa},
                               {"c1", complex_json(r.c1)},
                               {"c2", complex_json(r.c2)},
                               {"residual", r.residual},
                               {"predicted_residual", r.predicted_residual},
                               {"predicted_ratio", complex_json(r.predicted_ratio)},
                               {"agreement", agreement}});
        doc.diagnostics = {{"steps", r.steps},
                           {"logscale", r.logscale},
                           {"bound_state", is_bound_state(order, N)},
                           {"ell", ell_of_order(order)}};
        return doc;
    }
};

struct ScanCmd {
    int N = 1;
    double energy = 1.0;
    std::string nu_range;
    ContourFlags contour;
    NumericsFlags numerics;

    Document run(bool csv) const {
        const double kappa = kappa_of(energy);
        const NuRange range = parse_range(nu_range);
        const ContourSpec spec = contour.spec(N, kappa);
        Document doc;
        doc.params = {{"N", N}, {"energy", energy}, {"nu_min", range.lo}, {"nu_max", range.hi}, {"grid", range.n}};
        echo_contour(doc.params, spec);
        echo_numerics(doc.params, numerics.get());

        const auto minima = scan_sturmian(N, kappa, range.lo, range.hi, range.n, spec, numerics.get());
        std::string table = "nu,residual\n";
        for (const ResidualMinimum& m : minima) {
            doc.results.push_back({{"nu", m.nu}, {"residual", m.residual}});
            table += csv_number(m.nu) + "," + csv_number(m.residual) + "\n";
        }
        doc.diagnostics["minima"] = minima.size();
        if (csv) doc.csv = std::move(table);
        return doc;
    }
};

struct MonodromyCmd {
    double nu = 0.5;
    int m = 2;
    double z0 = 3.0;

    Document run() const {
        if (!(z0 > 0.0) || !std::isfinite(z0)) throw std::invalid_argument("--z0 must be positive");
        const Order order(nu);
        Document doc;
        doc.params = {{"nu", nu}, {"m", m}, {"z0", z0}};
        const Monodromy mono = monodromy_coeffs(order, m);
        const cplx z(z0, 0.0);
        const cplx formula = mono.a * hankel_principal(HankelKind::two, order, z) +
                             mono.b * hankel_principal(HankelKind::one, order, z);
        const ContinuationResult oracle = continuation_oracle(order, z, m * kPi);
        const double rel = std::abs(formula - oracle.value) / std::abs(oracle.value);
        doc.results.push_back({{"nu", nu},
                               {"m", m},
                               {"a", complex_json(mono.a)},
                               {"b", complex_json(mono.b)},
                               {"formula", complex_json(formula)},
                               {"oracle", complex_json(oracle.value)},
                               {"relative_error", rel},
                               {"oracle_agree", rel <= 1e-8}});
        doc.diagnostics = {{"oracle_steps", oracle.steps}, {"near_integer", order.near_integer()}};
        return doc;
    }
};

struct ContourCmd {
    int N = 1;
    double kappa = 1.0;
    ContourFlags contour;

    Document run(bool csv) const {
        const ContourSpec spec = contour.spec(N, kappa);
        const ContourPath path = build_contour(spec);
        Document doc;
        doc.params["N"] = N;
        echo_contour(doc.params, spec);
        if (csv) {
            std::ostringstream os;
            write_contour_csv(os, path);
            doc.csv = os.str();
        }
        for (const ContourRecord& r : export_contour(path)) {
            doc.results.push_back({{"t", r.t},
                                   {"rho", r.rho},
                                   {"theta", r.theta},
                                   {"re", r.re},
                                   {"im", r.im},
                                   {"sector", r.sector ? ordered_json(*r.sector) : ordered_json(nullptr)},
                                   {"segment", std::string(to_string(r.segment))}});
        }
        doc.diagnostics = {{"points", path.size()}, {"winding_number", winding_number(path)}};
        return doc;
    }
};

struct UnrollCmd {
    int N = 1;
    double nu = 0.5;
    double energy = 1.0;
    ContourFlags contour;
    NumericsFlags numerics;

    Document run(bool csv) const {
        const double kappa = kappa_of(energy);
        const ContourSpec spec = contour.spec(N, kappa);
        const Order order(nu);
        Document doc;
        doc.params = {{"N", N}, {"nu", nu}, {"energy", energy}};
        echo_contour(doc.params, spec);
        echo_numerics(doc.params, numerics.get());

        const ContourPath path = build_contour(spec);
        const double ell = ell_of_order(nu);
        const PropState seed = seed_asymptotic(HankelKind::two, order, path.points().front(), kappa);
        const auto states = propagate_recording(path, ell, kappa * kappa, seed, numerics.get());

        std::string table = "t,segment,u,v,phi_re,phi_im,dphi_re,dphi_im,residual\n";
        double worst = 0.0;
        for (std::size_t i = 0; i < path.size(); ++i) {
            const SurfacePoint& p = path.points()[i];
            const cplx psi = states[i].psi();
            const StripJet jet =
                to_strip_jet(p, psi, states[i].dpsi(), rhs(p.to_complex(), psi, ell, kappa * kappa));
            const StripPoint q = map_to_strip(p);
            const double scale = std::abs(jet.phi) * (1.0 + 0.25 * kappa * kappa * p.rho() * p.rho());
            const double res = std::abs(strip_equation_residual(nu, kappa, q.x(), jet.phi, jet.d2phi)) / scale;
            worst = std::max(worst, res);
            const std::string seg(to_string(path.segments()[i]));
            doc.results.push_back({{"t", path.params()[i]},
                                   {"segment", seg},
                                   {"u", q.u},
                                   {"v", q.v},
                                   {"phi", complex_json(jet.phi)},
                                   {"dphi", complex_json(jet.dphi)},
                                   {"residual", res}});
            table += csv_number(path.params()[i]) + "," + seg + "," + csv_number(q.u) + "," + csv_number(q.v) +
                     "," + csv_number(jet.phi.real()) + "," + csv_number(jet.phi.imag()) + "," +
                     csv_number(jet.dphi.real()) + "," + csv_number(jet.dphi.imag()) + "," + csv_number(res) +
                     "\n";
        }
        doc.diagnostics = {{"points", path.size()},
                           {"max_residual", worst},
                           {"order_term", strip_order_term(nu)}};
        if (csv) doc.csv = std::move(table);
        return doc;
    }
};

Document run_verify() {
    Document doc;
    bool all = true;
    for (const acceptance::CriterionResult& c : acceptance::run_all()) {
        all = all && c.passed;
        doc.results.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    doc.diagnostics["all_passed"] = all;
    doc.exit_code = all ? kOk : kVerification;
    return doc;
}

std::string render_json(const std::string& command, const Document& doc) {
    ordered_json top = {{"command", command},
                        {"params", doc.params},
                        {"results", doc.results},
                        {"diagnostics", doc.diagnostics}};
    return top.dump(2) + "\n";
}

}  // namespace

Outcome execute(const std::vector<std::string>& args) {
    CLI::App app{"Bound states on knot contours of the punctured complex plane", "knot"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "read flags from an INI/TOML file (command-line flags win)");

    std::string format;
    std::string out_path;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the document to PATH instead of stdout");

    TableCmd table;
    auto* t = app.add_subcommand("table", "allowed knot quanta for N turns");
    t->add_option("--N", table.N, "number of turns")->required()->check(CLI::PositiveNumber);
    t->add_option("--m-max", table.m_max, "largest M")->required()->check(CLI::PositiveNumber);
    t->add_option("--dim", table.dim, "spatial dimension for the coupling column");
    t->add_option("--partial", table.partial, "partial wave for the coupling column");

    ShootCmd sh;
    auto* s = app.add_subcommand("shoot", "transport an H2 seed over C^(N) and fit the Hankel pair");
    s->add_option("--N", sh.N, "number of turns")->required()->check(CLI::NonNegativeNumber);
    auto* nu_opt = s->add_option("--nu", sh.nu, "Bessel order");
    s->add_option("--dim", sh.dim, "spatial dimension")->excludes(nu_opt);
    s->add_option("--partial", sh.partial, "partial wave")->excludes(nu_opt);
    s->add_option("--gamma", sh.gamma, "inverse-square coupling")->excludes(nu_opt);
    s->add_option("--energy", sh.energy, "E = kappa^2")->capture_default_str();
    sh.contour.attach(s);
    sh.numerics.attach(s);

    ScanCmd sc;
    auto* c = app.add_subcommand("scan", "locate quantized orders by residual minimization");
    c->add_option("--N", sc.N, "number of turns")->required()->check(CLI::PositiveNumber);
    c->add_option("--energy", sc.energy, "E = kappa^2")->capture_default_str();
    c->add_option("--nu", sc.nu_range, "order grid a:b:n")->required();
    sc.contour.attach(c);
    sc.numerics.attach(c);

    MonodromyCmd mo;
    auto* m = app.add_subcommand("monodromy", "circuit coefficients with an ODE continuation check");
    m->add_option("--nu", mo.nu, "Bessel order")->required();
    m->add_option("--m", mo.m, "half-turns")->required();
    m->add_option("--z0", mo.z0, "radius of the continuation circle")->capture_default_str();

    ContourCmd co;
    auto* k = app.add_subcommand("contour", "sample C^(N)");
    k->add_option("--N", co.N, "number of turns")->required()->check(CLI::NonNegativeNumber);
    co.contour.attach(k);

    UnrollCmd un;
    auto* u = app.add_subcommand("unroll", "transported solution on the strip plane");
    u->add_option("--N", un.N, "number of turns")->required()->check(CLI::NonNegativeNumber);
    u->add_option("--nu", un.nu, "Bessel order")->required();
    u->add_option("--energy", un.energy, "E = kappa^2")->capture_default_str();
    un.contour.attach(u);
    un.numerics.attach(u);

    auto* v = app.add_subcommand("verify", "run the acceptance suite");

    Outcome outcome;
    std::ostringstream out, err;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        outcome.exit_code = code == 0 ? kOk : kUsage;
        outcome.output = out.str();
        outcome.error = err.str();
        return outcome;
    }

    CLI::App* chosen = app.get_subcommands().front();
    const std::string command = chosen->get_name();
    const bool tabular = command == "contour" || command == "scan" || command == "unroll";
    if (format == "csv" && !tabular) {
        outcome.exit_code = kUsage;
        outcome.error = "error: --format csv is only available for contour, scan and unroll\n";
        return outcome;
    }
    const bool csv = format == "csv" || (format.empty() && command == "contour");

    try {
        Document doc;
        if (chosen == t) doc = table.run();
        else if (chosen == s) doc = sh.run();
        else if (chosen == c) doc = sc.run(csv);
        else if (chosen == m) doc = mo.run();
        else if (chosen == k) doc = co.run(csv);
        else if (chosen == u) doc = un.run(csv);
        else if (chosen == v) doc = run_verify();

        std::string text = doc.csv ? *doc.csv : render_json(command, doc);
        outcome.exit_code = doc.exit_code;
        if (!out_path.empty()) {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                outcome.exit_code = kUsage;
                outcome.error = "error: cannot open " + out_path + " for writing\n";
                return outcome;
            }
            file << text;
        } else {
            outcome.output = std::move(text);
        }
        if (doc.exit_code == kVerification) outcome.error = "error: acceptance suite failed\n";
    } catch (const IntegrationError& e) {
        std::ostringstream os;
        os.precision(17);
        os << "error: " << e.what() << " (t = " << e.t() << ", r = " << e.r().real() << (e.r().imag() < 0 ? "" : "+")
           << e.r().imag() << "i)\n";
        outcome.exit_code = kNumerical;
        outcome.error = os.str();
    } catch (const ConvergenceError& e) {
        outcome.exit_code = kNumerical;
        outcome.error = std::string("error: ") + e.what() + "\n";
    } catch (const std::invalid_argument& e) {
        outcome.exit_code = kUsage;
        outcome.error = std::string("error: ") + e.what() + "\n";
    } catch (const std::domain_error& e) {
        outcome.exit_code = kUsage;
        outcome.error = std::string("error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        outcome.exit_code = kNumerical;
        outcome.error = std::string("error: ") + e.what() + "\n";
    }
    return outcome;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const Outcome o = execute(args);
    std::cout << o.output << std::flush;
    std::cerr << o.error << std::flush;
    return o.exit_code;
}

}  // namespace knot::cli
