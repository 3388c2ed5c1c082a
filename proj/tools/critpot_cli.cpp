// critpot: critical coupling parameters of short-range central potentials.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critpot/critpot.hpp"
#include "critpot/io/config.hpp"
#include "critpot/io/report.hpp"

namespace {

using namespace critpot;
using critpot::io::json;

constexpr int kSolverError = 2;
constexpr int kRequestError = 3;

struct PotentialArgs {
    std::string name;
    std::vector<std::string> params;
    std::string config;

    io::PotentialRequest request() const {
        io::PotentialRequest req;
        if (!config.empty()) req = io::load_config(config);
        if (!name.empty()) req.name = name;
        for (const auto& kv : params) {
            const auto [k, v] = io::parse_param(kv);
            req.params[k] = v;
        }
        if (req.name.empty()) throw Error(Errc::invalid_argument, "a potential is required (--pot or --config)");
        return req;
    }
};

struct OutputArgs {
    std::string format = "csv";
    std::string out;

    void emit(const std::string& csv, const json& j) const {
        const std::string text = format == "json" ? j.dump(2) + "\n" : csv;
        if (out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(out);
        if (!f) throw Error(Errc::invalid_argument, "cannot write '" + out + "'");
        f << text;
    }
};

void add_potential(CLI::App* cmd, PotentialArgs& pot) {
    cmd->add_option("--pot", pot.name, "Built-in potential")
        ->check(CLI::IsMember(builtin_names()));
    cmd->add_option("--param", pot.params, "Potential parameter key=value (repeatable)");
    cmd->add_option("--config", pot.config, "JSON file {\"name\": ..., \"params\": {...}}");
}

void add_output(CLI::App* cmd, OutputArgs& out) {
    cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out.out, "Write output to this file instead of stdout");
}

int fail(Errc code, const std::string& message) {
    std::cout << io::error_json(code, message).dump() << '\n';
    std::cerr << "critpot: " << message << '\n';
    return is_request_error(code) ? kRequestError : kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical coupling parameters beta_{n,l} of short-range central potentials"};
    app.require_subcommand(1);

    PotentialArgs pot;
    OutputArgs out;
    int n = 1;
    int l = 0;
    int n_max = 4;
    int l_max = 3;
    double beta = 0.0;
    double tol = SolverDefaults::tol;
    std::string method = "auto";
    std::string curve;
    int curve_points = 200;
    double curve_max = 0.0;
    bool diffs = false;

    const std::vector<std::string> methods{"auto", "shoot", "phase", "wkb1", "wkb2", "analytic"};

    auto* critical = app.add_subcommand("critical", "Compute one critical parameter");
    add_potential(critical, pot);
    add_output(critical, out);
    critical->add_option("-n", n, "Bound-state index, n >= 1")->check(CLI::PositiveNumber);
    critical->add_option("-l", l, "Orbital quantum number")->check(CLI::NonNegativeNumber);
    critical->add_option("--method", method, "Solver")->check(CLI::IsMember(methods));
    critical->add_option("--tol", tol, "Relative bracket width");

    auto* table = app.add_subcommand("table", "Fill an (n, l) grid");
    add_potential(table, pot);
    add_output(table, out);
    table->add_option("--n-max", n_max, "Largest n")->check(CLI::PositiveNumber);
    table->add_option("--l-max", l_max, "Largest l")->check(CLI::NonNegativeNumber);
    table->add_option("--method", method, "Solver")->check(CLI::IsMember(methods));
    table->add_option("--tol", tol, "Relative bracket width");
    table->add_flag("--diffs", diffs, "Add second-difference columns Delta and Lambda");

    auto* count = app.add_subcommand("count", "Number of bound states at coupling beta");
    add_potential(count, pot);
    add_output(count, out);
    count->add_option("--beta", beta, "Coupling")->required();
    count->add_option("-l", l, "Orbital quantum number")->check(CLI::NonNegativeNumber);

    auto* maxl = app.add_subcommand("maxl", "Largest l with a bound state at coupling beta");
    add_potential(maxl, pot);
    add_output(maxl, out);
    maxl->add_option("--beta", beta, "Coupling")->required();

    auto* compare = app.add_subcommand("compare", "Run every applicable method");
    add_potential(compare, pot);
    add_output(compare, out);
    compare->add_option("-n", n, "Bound-state index")->check(CLI::PositiveNumber);
    compare->add_option("-l", l, "Orbital quantum number")->check(CLI::NonNegativeNumber);
    compare->add_option("--tol", tol, "Relative bracket width");
    compare->add_option("--curve", curve, "Write (beta, F, eta) samples as CSV to this file");
    compare->add_option("--curve-points", curve_points, "Samples in the curve")->check(CLI::Range(2, 100000));
    compare->add_option("--curve-max", curve_max, "Upper end of the beta range (default 1.5 beta_{n,l})");

    auto* asym = app.add_subcommand("asym", "Asymptotic-law constants");
    add_potential(asym, pot);
    add_output(asym, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(Errc::invalid_argument, e.what());
    }

    try {
        const io::PotentialRequest req = pot.request();
        const PotentialSpec spec = req.build();

        if (critical->parsed()) {
            const CriticalResult r = solve(spec, n, l, MethodChoice::parse(method), tol);
            out.emit(io::critical_csv(req, r), io::result_json(req, r));
        } else if (table->parsed()) {
            TableRequest tr;
            tr.n_max = n_max;
            tr.l_max = l_max;
            tr.method = MethodChoice::parse(method);
            tr.tol = tol;
            const Table t = fill_table(spec, tr);
            out.emit(io::table_csv(req, t, diffs), io::table_json(req, t, diffs));
        } else if (count->parsed()) {
            const int c = count_bound_states(spec, beta, l);
            const json j = {{"potential", req.name}, {"params", io::params_json(req.params)}, {"beta", beta},
                            {"l", l}, {"count", c}};
            out.emit(std::to_string(c) + "\n", j);
        } else if (maxl->parsed()) {
            const std::optional<int> m = max_bound_l(spec, beta);
            const json j = {{"potential", req.name}, {"params", io::params_json(req.params)}, {"beta", beta},
                            {"max_l", m ? json(*m) : json(nullptr)}};
            out.emit((m ? std::to_string(*m) : std::string("none")) + "\n", j);
        } else if (compare->parsed()) {
            const Comparison c = compare_methods(spec, n, l, tol);
            out.emit(io::compare_csv(req, n, l, c), io::compare_json(req, n, l, c));
            if (!curve.empty()) {
                double hi = curve_max;
                if (!(hi > 0.0)) {
                    hi = 0.0;
                    for (const auto& [m, o] : c.runs)
                        if (o.ok() && (m == Method::shoot || m == Method::phase)) hi = 1.5 * o.result->beta;
                    if (!(hi > 0.0)) throw Error(Errc::non_convergence, "curve: no exact result to size the range");
                }
                std::ofstream f(curve);
                if (!f) throw Error(Errc::invalid_argument, "cannot write '" + curve + "'");
                f << io::curve_csv(sample_curve(spec, l, 0.0, hi, curve_points));
            }
        } else if (asym->parsed()) {
            const AsymptoticProfile a = asymptotic_profile(spec);
            out.emit(io::asym_csv(req, a), io::asym_json(req, a));
        }
    } catch (const Error& e) {
        return fail(e.code(), e.what());
    } catch (const std::exception& e) {
        return fail(Errc::non_convergence, e.what());
    }
    return 0;
}
