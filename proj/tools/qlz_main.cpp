// qlz: quantized Landau-Zener solver CLI.
//
// Subcommands: solve-rwa, solve-full, asymptote, figure, validate.
// Emits CSV (with a '#' metadata header) or JSON with the same schema.
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 truncation escalation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlz/full.hpp"
#include "qlz/joint_state.hpp"
#include "qlz/oracle.hpp"
#include "qlz/rwa.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitTruncation = 4;

struct TruncationEscalation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputTable {
    std::string command;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(std::ostream& os, const OutputTable& t) {
    os << "# qlz " << t.command << "\n";
    for (const auto& [key, value] : t.meta) os << "# " << key << "=" << value << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    }
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << format_value(row[i]) << (i + 1 < row.size() ? "," : "\n");
        }
    }
}

void write_json(std::ostream& os, const OutputTable& t) {
    nlohmann::ordered_json j;
    j["command"] = t.command;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : t.meta) params[key] = value;
    j["params"] = params;
    j["columns"] = t.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(v);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(1) << "\n";
}

void emit(const OutputTable& t, const std::string& out_path, const std::string& format) {
    std::ostringstream body;
    if (format == "json") {
        write_json(body, t);
    } else {
        write_csv(body, t);
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw qlz::DomainError("cannot open output file: " + out_path);
        f << body.str();
    }
}

struct StateSpec {
    int n = 0;
    qlz::QubitLevel level = qlz::QubitLevel::ground;
    std::string text;
};

StateSpec parse_state(const std::string& text) {
    // grammar: fock:<n>,<g|e>
    StateSpec spec;
    spec.text = text;
    const std::string prefix = "fock:";
    if (text.rfind(prefix, 0) != 0) {
        throw qlz::DomainError("state spec must look like fock:<n>,<g|e>, got '" + text + "'");
    }
    const auto comma = text.find(',', prefix.size());
    if (comma == std::string::npos || comma + 2 != text.size()) {
        throw qlz::DomainError("state spec must look like fock:<n>,<g|e>, got '" + text + "'");
    }
    try {
        std::size_t used = 0;
        const std::string digits = text.substr(prefix.size(), comma - prefix.size());
        spec.n = std::stoi(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
        throw qlz::DomainError("bad photon number in state spec '" + text + "'");
    }
    if (spec.n < 0) throw qlz::DomainError("photon number must be >= 0");
    const char level = text.back();
    if (level == 'g') {
        spec.level = qlz::QubitLevel::ground;
    } else if (level == 'e') {
        spec.level = qlz::QubitLevel::excited;
    } else {
        throw qlz::DomainError("qubit level must be 'g' or 'e' in state spec '" + text + "'");
    }
    return spec;
}

std::vector<double> uniform_grid(double a, double b, int count) {
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    g.back() = b;
    return g;
}

// ---------------------------------------------------------------- solve-rwa

struct SolveRwaArgs {
    double g = 0.1;
    double tau0 = -10.0;
    double tau1 = 10.0;
    std::string state = "fock:1,g";
    int n_max = -1;
    int samples = 2001;
    std::string out;
    std::string format = "csv";
};

void run_solve_rwa(const SolveRwaArgs& args) {
    const StateSpec spec = parse_state(args.state);
    const int n_max = args.n_max >= 0 ? args.n_max : spec.n + 2;
    qlz::JointState state = qlz::JointState::fock(n_max, spec.n, spec.level);

    OutputTable table;
    table.command = "solve-rwa";
    table.meta = {{"g", format_value(args.g)},         {"tau0", format_value(args.tau0)},
                  {"tau1", format_value(args.tau1)},   {"state", spec.text},
                  {"n_max", std::to_string(n_max)},    {"samples", std::to_string(args.samples)}};
    table.columns = {"tau", "sigma_z", "pe", "norm"};

    const auto grid = uniform_grid(args.tau0, args.tau1, args.samples);
    double previous_tau = args.tau0;
    for (double tau : grid) {
        if (tau > previous_tau) {
            state = qlz::evolve_rwa(state, {args.g, previous_tau, tau, n_max});
            previous_tau = tau;
        }
        table.rows.push_back({tau, qlz::population_difference(state),
                              qlz::excited_probability(state), state.norm()});
    }
    emit(table, args.out, args.format);
}

// --------------------------------------------------------------- solve-full

struct SolveFullArgs {
    double g = 1.0;
    double tau0 = 1.0;
    double tau1 = 11.0;
    std::string state = "fock:0,e";
    int n_max = 100;
    int samples = 2001;
    double rel_tol = 1e-9;
    bool no_auto_nmax = false;
    std::string out;
    std::string format = "csv";
};

qlz::FullTrajectory integrate_with_auto_nmax(const qlz::JointState& initial,
                                             qlz::FullParams params, bool auto_nmax,
                                             int* n_max_used) {
    constexpr int kMaxDoublings = 6;
    for (int attempt = 0;; ++attempt) {
        qlz::FullTrajectory traj = qlz::integrate_full(initial, params);
        if (!traj.truncation_warning) {
            *n_max_used = params.n_max;
            return traj;
        }
        if (!auto_nmax) {
            throw TruncationEscalation("top-sector population " +
                                       std::to_string(traj.max_top_population) +
                                       " exceeds 1e-6 at n_max=" + std::to_string(params.n_max));
        }
        if (attempt >= kMaxDoublings) {
            throw TruncationEscalation("truncation monitor still failing after " +
                                       std::to_string(kMaxDoublings) + " doublings of n_max");
        }
        params.n_max *= 2;
    }
}

void run_solve_full(const SolveFullArgs& args) {
    const StateSpec spec = parse_state(args.state);
    qlz::FullParams params;
    params.g = args.g;
    params.tau0 = args.tau0;
    params.tau1 = args.tau1;
    params.n_max = std::max(args.n_max, spec.n + 1);
    params.rel_tol = args.rel_tol;
    params.abs_tol = 1e-3 * args.rel_tol;
    params.samples = args.samples;

    qlz::JointState initial = qlz::JointState::fock(spec.n + 1, spec.n, spec.level);
    int n_max_used = params.n_max;
    qlz::FullTrajectory traj =
        integrate_with_auto_nmax(initial, params, !args.no_auto_nmax, &n_max_used);

    OutputTable table;
    table.command = "solve-full";
    table.meta = {{"g", format_value(args.g)},
                  {"tau0", format_value(args.tau0)},
                  {"tau1", format_value(args.tau1)},
                  {"state", spec.text},
                  {"n_max", std::to_string(n_max_used)},
                  {"samples", std::to_string(args.samples)},
                  {"rel_tol", format_value(args.rel_tol)},
                  {"max_top_population", format_value(traj.max_top_population)},
                  {"max_norm_drift", format_value(traj.max_norm_drift)}};
    table.columns = {"tau", "sigma_z", "pe", "norm"};
    for (const auto& point : traj.points) {
        const double sz = qlz::population_difference(point.state);
        table.rows.push_back({point.tau, sz, 0.5 * (1.0 + sz), point.state.norm()});
    }
    emit(table, args.out, args.format);
}

// ---------------------------------------------------------------- asymptote

struct AsymptoteArgs {
    double g = 0.1;
    int n_max = 101;
    std::string crossing = "symmetric";
    std::string start = "g";
    std::string out;
    std::string format = "csv";
};

void run_asymptote(const AsymptoteArgs& args) {
    const bool symmetric = args.crossing == "symmetric";
    if (!symmetric && args.crossing != "half") {
        throw qlz::DomainError("--crossing must be 'symmetric' or 'half'");
    }
    const bool start_excited = args.start == "e";
    if (!start_excited && args.start != "g") {
        throw qlz::DomainError("--start must be 'g' or 'e'");
    }
    constexpr double kInfiniteTau = 1e6;

    OutputTable table;
    table.command = "asymptote";
    table.meta = {{"g", format_value(args.g)},
                  {"n_max", std::to_string(args.n_max)},
                  {"crossing", args.crossing},
                  {"start", args.start},
                  {"tau_final", format_value(kInfiniteTau)}};
    table.columns = {"n", "pe_formula", "pe_numeric"};
    for (int n = 0; n <= args.n_max; ++n) {
        double formula, numeric;
        if (symmetric) {
            formula = qlz::pe_symmetric_crossing(args.g, n);
            const auto u = qlz::sector_propagator(args.g, n, -kInfiniteTau, kInfiniteTau);
            numeric = std::norm(u.u[0][1]);
        } else {
            formula = qlz::pe_half_crossing(args.g, n, start_excited);
            const auto u = qlz::sector_propagator(args.g, n, 0.0, kInfiniteTau);
            numeric = start_excited ? std::norm(u.u[0][0]) : std::norm(u.u[0][1]);
        }
        table.rows.push_back({static_cast<double>(n), formula, numeric});
    }
    emit(table, args.out, args.format);
}

// ------------------------------------------------------------------- figure

struct FigureArgs {
    int number = 1;
    int samples = 2001;
    std::string out;
    std::string format = "csv";
};

void add_rwa_sweep(OutputTable& table, double panel, int n_fock, double g, double tau_start,
                   const std::vector<double>& grid) {
    // population-difference trace for initial |n_fock, g>, columns
    // (panel, n, tau, sigma_z)
    const int n_max = n_fock + 2;
    qlz::JointState state = qlz::JointState::fock(n_max, n_fock, qlz::QubitLevel::ground);
    double previous = tau_start;
    for (double tau : grid) {
        if (tau > previous) {
            state = qlz::evolve_rwa(state, {g, previous, tau, n_max});
            previous = tau;
        }
        table.rows.push_back({panel, static_cast<double>(n_fock), tau,
                              qlz::population_difference(state)});
    }
}

void run_figure(const FigureArgs& args) {
    constexpr double kInfiniteTau = 1e6;
    const double g_weak = 0.1;
    OutputTable table;
    table.command = "figure " + std::to_string(args.number);

    switch (args.number) {
        case 1: {
            table.meta = {{"g", format_value(g_weak)},
                          {"initial", "fock:<n>,g"},
                          {"panel_a_tau0", format_value(-kInfiniteTau)},
                          {"panel_b_tau0", "-10"},
                          {"samples", std::to_string(args.samples)}};
            table.columns = {"panel", "n", "tau", "sigma_z"};
            const auto grid = uniform_grid(-10.0, 10.0, args.samples);
            for (int n : {1, 11, 31, 101}) {
                add_rwa_sweep(table, 1.0, n, g_weak, -kInfiniteTau, grid);
            }
            for (int n : {1, 11, 31, 101}) {
                add_rwa_sweep(table, 2.0, n, g_weak, -10.0, grid);
            }
            break;
        }
        case 2: {
            table.meta = {{"g", format_value(g_weak)},
                          {"tau_final", format_value(kInfiniteTau)},
                          {"tau0_symmetric", format_value(-kInfiniteTau)},
                          {"tau0_asymmetric", "-10"}};
            table.columns = {"n", "pe_formula", "pe_numeric", "pe_numeric_tau0_m10"};
            for (int n = 0; n <= 101; ++n) {
                const double formula = qlz::pe_symmetric_crossing(g_weak, n);
                const auto u_sym =
                    qlz::sector_propagator(g_weak, n, -kInfiniteTau, kInfiniteTau);
                const auto u_asym = qlz::sector_propagator(g_weak, n, -10.0, kInfiniteTau);
                table.rows.push_back({static_cast<double>(n), formula, std::norm(u_sym.u[0][1]),
                                      std::norm(u_asym.u[0][1])});
            }
            break;
        }
        case 3: {
            table.meta = {{"g", format_value(g_weak)},
                          {"initial", "fock:<n>,e"},
                          {"tau0", "0"},
                          {"tau1", "300"},
                          {"samples", std::to_string(args.samples)}};
            table.columns = {"n", "tau", "sigma_z"};
            const auto grid = uniform_grid(0.0, 300.0, args.samples);
            for (int n_fock : {0, 10, 30, 100}) {
                const int n_max = n_fock + 2;
                qlz::JointState state =
                    qlz::JointState::fock(n_max, n_fock, qlz::QubitLevel::excited);
                double previous = 0.0;
                for (double tau : grid) {
                    if (tau > previous) {
                        state = qlz::evolve_rwa(state, {g_weak, previous, tau, n_max});
                        previous = tau;
                    }
                    table.rows.push_back({static_cast<double>(n_fock), tau,
                                          qlz::population_difference(state)});
                }
            }
            break;
        }
        case 4: {
            table.meta = {{"g", format_value(g_weak)},
                          {"tau0", "0"},
                          {"tau_final", format_value(kInfiniteTau)}};
            table.columns = {"n", "pe_formula_excited", "pe_numeric_excited",
                             "pe_formula_ground", "pe_numeric_ground"};
            for (int n = 0; n <= 101; ++n) {
                const auto u = qlz::sector_propagator(g_weak, n, 0.0, kInfiniteTau);
                table.rows.push_back({static_cast<double>(n),
                                      qlz::pe_half_crossing(g_weak, n, true),
                                      std::norm(u.u[0][0]),
                                      qlz::pe_half_crossing(g_weak, n, false),
                                      std::norm(u.u[0][1])});
            }
            break;
        }
        case 5: {
            table.meta = {{"initial", "fock:0,e"},
                          {"tau0", "1"},
                          {"tau1", "31"},
                          {"n_max_start", "100"},
                          {"samples", std::to_string(args.samples)}};
            table.columns = {"g", "tau", "sigma_z", "norm"};
            qlz::JointState initial = qlz::JointState::fock(1, 0, qlz::QubitLevel::excited);
            for (double g : {0.1, 1.0, 3.0, 10.0}) {
                qlz::FullParams params;
                params.g = g;
                params.tau0 = 1.0;
                params.tau1 = 31.0;
                params.n_max = 100;
                params.samples = args.samples;
                int n_max_used = params.n_max;
                qlz::FullTrajectory traj =
                    integrate_with_auto_nmax(initial, params, true, &n_max_used);
                table.meta.push_back({"n_max_g" + format_value(g), std::to_string(n_max_used)});
                for (const auto& point : traj.points) {
                    table.rows.push_back({g, point.tau, qlz::population_difference(point.state),
                                          point.state.norm()});
                }
            }
            break;
        }
        default:
            throw qlz::DomainError("figure number must be 1..5");
    }
    emit(table, args.out, args.format);
}

// ----------------------------------------------------------------- validate

struct ValidationCheck {
    std::string name;
    double value;
    double threshold;
};

void run_validate() {
    std::vector<ValidationCheck> checks;

    {
        double worst = 0.0;
        for (double g_n : {0.0, 0.1, 0.5, 1.005, 1.01}) {
            for (int i = 0; i < 801; ++i) {
                const double tau = -10.0 + 20.0 * i / 800.0;
                const auto s = qlz::basis_solutions(g_n, tau);
                worst = std::max(worst, std::abs(s.wronskian() - 1.0));
            }
        }
        checks.push_back({"wronskian_max_deviation", worst, 1e-8});
    }
    {
        double worst_dev = 0.0, worst_unitarity = 0.0;
        for (int n : {0, 1, 11, 31, 101}) {
            const auto u = qlz::sector_propagator(0.1, n, -10.0, 10.0);
            worst_unitarity = std::max(worst_unitarity, u.unitarity_defect());
            for (int col = 0; col < 2; ++col) {
                std::array<qlz::Complex, 2> e0{col == 0 ? 1.0 : 0.0, col == 0 ? 0.0 : 1.0};
                const auto v = qlz::oracle::ode_sector_oracle(0.1, n, -10.0, 10.0, e0);
                worst_dev = std::max({worst_dev, std::abs(v[0] - u.u[0][col]),
                                      std::abs(v[1] - u.u[1][col])});
            }
        }
        checks.push_back({"sector_propagator_vs_ode_oracle", worst_dev, 1e-6});
        checks.push_back({"sector_propagator_unitarity", worst_unitarity, 1e-8});
    }
    {
        const int n_max = 13;
        qlz::JointState initial = qlz::JointState::fock(n_max, 11, qlz::QubitLevel::ground);
        qlz::JointState evolved = qlz::evolve_rwa(initial, {0.1, -10.0, 10.0, n_max});
        qlz::JointState reference = qlz::oracle::dense_propagate(
            {qlz::oracle::DenseModel::rwa, 0.1, n_max}, initial, -10.0, 10.0, 40000, 1e-7);
        double worst = 0.0;
        for (int i = 0; i < evolved.dim(); ++i) {
            worst = std::max(worst,
                             std::abs(evolved.amplitudes()[i] - reference.amplitudes()[i]));
        }
        checks.push_back({"evolve_rwa_vs_dense_oracle", worst, 1e-6});
    }
    for (double g : {0.1, 1.0}) {
        const int n_max = g < 0.5 ? 14 : 30;
        qlz::JointState initial = qlz::JointState::fock(n_max, 0, qlz::QubitLevel::excited);
        qlz::FullParams params;
        params.g = g;
        params.tau0 = 1.0;
        params.tau1 = 11.0;
        params.n_max = n_max;
        params.rel_tol = 1e-10;
        params.abs_tol = 1e-13;
        params.samples = 2;
        qlz::FullTrajectory traj = qlz::integrate_full(initial, params);
        qlz::JointState lab = qlz::to_lab_state(traj.points.back().state, params.tau1);
        qlz::JointState reference = qlz::oracle::dense_propagate(
            {qlz::oracle::DenseModel::full, g, n_max}, initial, 1.0, 11.0,
            g < 0.5 ? 4000 : 20000, 2e-5);
        double worst = 0.0;
        for (int i = 0; i < lab.dim(); ++i) {
            worst = std::max(worst, std::abs(lab.amplitudes()[i] - reference.amplitudes()[i]));
        }
        checks.push_back({"integrate_full_vs_dense_oracle_g" + format_value(g), worst, 1e-4});
    }

    bool all_ok = true;
    for (const auto& c : checks) {
        const bool ok = c.value < c.threshold;
        all_ok = all_ok && ok;
        std::printf("%-42s max_dev=%.3e threshold=%.0e %s\n", c.name.c_str(), c.value,
                    c.threshold, ok ? "PASS" : "FAIL");
    }
    if (!all_ok) throw qlz::ConvergenceError("validation suite failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantized Landau-Zener solver"};
    app.require_subcommand(1);

    SolveRwaArgs rwa_args;
    auto* rwa_cmd = app.add_subcommand("solve-rwa", "weak-coupling closed-form evolution");
    rwa_cmd->set_config("--config", "", "flat key=value configuration file; flags take precedence");
    rwa_cmd->add_option("--g", rwa_args.g, "scaled coupling");
    rwa_cmd->add_option("--tau0", rwa_args.tau0, "start of the sweep (scaled time)");
    rwa_cmd->add_option("--tau1", rwa_args.tau1, "end of the sweep");
    rwa_cmd->add_option("--state", rwa_args.state, "initial state, fock:<n>,<g|e>");
    rwa_cmd->add_option("--nmax", rwa_args.n_max, "Fock truncation (default: n+2)");
    rwa_cmd->add_option("--samples", rwa_args.samples, "output grid size")
        ->check(CLI::Range(2, 10000000));
    rwa_cmd->add_option("--out", rwa_args.out, "output path ('-' for stdout)");
    rwa_cmd->add_option("--format", rwa_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    SolveFullArgs full_args;
    auto* full_cmd = app.add_subcommand("solve-full", "strong-coupling truncated-Fock evolution");
    full_cmd->set_config("--config", "", "flat key=value configuration file; flags take precedence");
    full_cmd->add_option("--g", full_args.g, "coupling in units of the field frequency");
    full_cmd->add_option("--tau0", full_args.tau0, "start of the sweep (scaled time)");
    full_cmd->add_option("--tau1", full_args.tau1, "end of the sweep");
    full_cmd->add_option("--state", full_args.state, "initial state, fock:<n>,<g|e>");
    full_cmd->add_option("--nmax", full_args.n_max, "starting Fock truncation");
    full_cmd->add_option("--samples", full_args.samples, "output grid size")
        ->check(CLI::Range(2, 10000000));
    full_cmd->add_option("--rel-tol", full_args.rel_tol, "integrator relative tolerance");
    full_cmd->add_flag("--no-auto-nmax", full_args.no_auto_nmax,
                       "fail instead of doubling n_max on truncation warnings");
    full_cmd->add_option("--out", full_args.out, "output path ('-' for stdout)");
    full_cmd->add_option("--format", full_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    AsymptoteArgs asym_args;
    auto* asym_cmd = app.add_subcommand("asymptote", "asymptotic transition probabilities");
    asym_cmd->set_config("--config", "", "flat key=value configuration file; flags take precedence");
    asym_cmd->add_option("--g", asym_args.g, "scaled coupling");
    asym_cmd->add_option("--nmax", asym_args.n_max, "largest dressed-pair index");
    asym_cmd->add_option("--crossing", asym_args.crossing, "symmetric or half");
    asym_cmd->add_option("--start", asym_args.start, "initial qubit level for half crossing");
    asym_cmd->add_option("--out", asym_args.out, "output path ('-' for stdout)");
    asym_cmd->add_option("--format", asym_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    FigureArgs fig_args;
    auto* fig_cmd = app.add_subcommand("figure", "emit a bundled reference-figure dataset");
    fig_cmd->set_config("--config", "", "flat key=value configuration file; flags take precedence");
    fig_cmd->add_option("number", fig_args.number, "figure number 1..5")->required();
    fig_cmd->add_option("--samples", fig_args.samples, "time grid size for sweep figures")
        ->check(CLI::Range(2, 10000000));
    fig_cmd->add_option("--out", fig_args.out, "output path ('-' for stdout)");
    fig_cmd->add_option("--format", fig_args.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* validate_cmd = app.add_subcommand("validate", "run the oracle-equivalence suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        nlohmann::json err = {{"error", {{"type", "config"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitConfig;
    }

    try {
        if (rwa_cmd->parsed()) run_solve_rwa(rwa_args);
        if (full_cmd->parsed()) run_solve_full(full_args);
        if (asym_cmd->parsed()) run_asymptote(asym_args);
        if (fig_cmd->parsed()) run_figure(fig_args);
        if (validate_cmd->parsed()) run_validate();
    } catch (const TruncationEscalation& e) {
        nlohmann::json err = {{"error", {{"type", "truncation"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitTruncation;
    } catch (const qlz::TruncationError& e) {
        nlohmann::json err = {{"error", {{"type", "truncation"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitTruncation;
    } catch (const qlz::DomainError& e) {
        nlohmann::json err = {{"error", {{"type", "config"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", {{"type", "numerical"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
