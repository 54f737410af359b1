// Command-line front end: parameter sweeps, eigenvalue-density tables, the
// critical-point report, and the ED cross-validation harness.
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 oracle disagreement.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tfim/ed_oracle.hpp"
#include "tfim/quadrature.hpp"
#include "tfim/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitOracle = 4;

using nlohmann::json;

struct CliState {
    // sweep
    double x_min = -2.0;
    double x_max = 2.0;
    int steps = 81;
    std::vector<std::string> sizes = {"10", "20", "inf"};
    std::string sector = "even";
    double quad_tol = 1e-8;
    double step = 1e-4;
    bool refine_critical = true;
    // density / oracle
    std::vector<double> x_list;
    std::vector<int> n_list;
    int p_steps = 101;
    // common
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
    int jobs = 0;
};

std::optional<int> parse_size(const std::string& token) {
    if (token == "inf") return std::nullopt;
    std::size_t pos = 0;
    const int n = std::stoi(token, &pos);
    if (pos != token.size())
        throw std::invalid_argument("bad size token: " + token);
    return n;
}

// Config-file values fill in every option the command line left untouched.
void apply_config(const CLI::App& cmd, CliState& state) {
    if (state.config_path.empty()) return;
    std::ifstream in(state.config_path);
    if (!in)
        throw std::invalid_argument("cannot read config file " + state.config_path);
    json cfg = json::parse(in);

    const auto unset = [&cmd](const std::string& flag) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        return opt != nullptr && opt->count() == 0;
    };
    if (cfg.contains("x_min") && unset("--x-min")) state.x_min = cfg["x_min"];
    if (cfg.contains("x_max") && unset("--x-max")) state.x_max = cfg["x_max"];
    if (cfg.contains("steps") && unset("--steps")) state.steps = cfg["steps"];
    if (cfg.contains("quad_tol") && unset("--quad-tol"))
        state.quad_tol = cfg["quad_tol"];
    if (cfg.contains("step") && unset("--step")) state.step = cfg["step"];
    if (cfg.contains("format") && unset("--format")) state.format = cfg["format"];
    if (cfg.contains("out") && unset("--out")) state.out_path = cfg["out"];
    if (cfg.contains("jobs") && unset("--jobs")) state.jobs = cfg["jobs"];
    if (cfg.contains("p_steps") && unset("--p-steps")) state.p_steps = cfg["p_steps"];
    if (cfg.contains("refine_critical") && unset("--refine-critical"))
        state.refine_critical = cfg["refine_critical"];
    if (cfg.contains("sector") && unset("--sector")) state.sector = cfg["sector"];
    if (cfg.contains("sizes") && unset("--sizes")) {
        state.sizes.clear();
        for (const auto& s : cfg["sizes"])
            state.sizes.push_back(s.is_string() ? s.get<std::string>()
                                                : std::to_string(s.get<int>()));
    }
    if (cfg.contains("x_list") && unset("--x-list"))
        state.x_list = cfg["x_list"].get<std::vector<double>>();
    if (cfg.contains("n_list") && unset("--n-list"))
        state.n_list = cfg["n_list"].get<std::vector<int>>();
}

tfim::OutputFormat parse_format(const std::string& format) {
    if (format == "csv") return tfim::OutputFormat::Csv;
    if (format == "json") return tfim::OutputFormat::Json;
    throw std::invalid_argument("format must be csv or json, got " + format);
}

tfim::Parity parse_sector(const std::string& sector) {
    if (sector == "even") return tfim::Parity::Even;
    if (sector == "odd") return tfim::Parity::Odd;
    throw std::invalid_argument("sector must be even or odd, got " + sector);
}

void emit(const CliState& state, const std::string& content) {
    if (state.out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        tfim::write_file_atomic(state.out_path, content);
}

void add_common(CLI::App* cmd, CliState& state, bool with_jobs = true) {
    cmd->add_option("--format", state.format, "Output format: csv or json");
    cmd->add_option("--out", state.out_path, "Output path (default: stdout)");
    cmd->add_option("--config", state.config_path, "JSON config file; CLI flags win");
    if (with_jobs)
        cmd->add_option("--jobs", state.jobs, "Worker threads (0 = hardware)");
}

int run_sweep_cmd(const CLI::App& cmd, CliState& state) {
    apply_config(cmd, state);
    tfim::SweepConfig config;
    config.x_min = state.x_min;
    config.x_max = state.x_max;
    config.x_steps = state.steps;
    config.sizes.clear();
    for (const auto& token : state.sizes) config.sizes.push_back(parse_size(token));
    config.sector = parse_sector(state.sector);
    config.quad_tol = state.quad_tol;
    config.derivative_step = state.step;
    config.format = parse_format(state.format);
    config.output_path = state.out_path;
    config.refine_critical = state.refine_critical;
    config.jobs = state.jobs;
    tfim::validate(config);

    const auto rows = tfim::run_sweep(config);
    emit(state, config.format == tfim::OutputFormat::Csv ? tfim::to_csv(rows)
                                                         : tfim::to_json(rows));
    return kExitOk;
}

int run_density_cmd(const CLI::App& cmd, CliState& state) {
    apply_config(cmd, state);
    if (state.x_list.empty()) state.x_list = {0.8, 0.9, 1.0};
    const auto format = parse_format(state.format);
    const auto rows = tfim::run_density(state.x_list, state.p_steps, state.jobs);
    emit(state, format == tfim::OutputFormat::Csv ? tfim::to_csv(rows)
                                                  : tfim::to_json(rows));
    return kExitOk;
}

int run_critical_cmd(const CLI::App& cmd, CliState& state) {
    apply_config(cmd, state);
    if (state.format != "json")
        throw std::invalid_argument("critical: report is JSON only (--format json)");
    const tfim::CriticalSummary summary = tfim::run_critical();
    emit(state, tfim::to_json(summary));
    return kExitOk;
}

int run_oracle_cmd(const CLI::App& cmd, CliState& state) {
    apply_config(cmd, state);
    if (state.n_list.empty()) state.n_list = {2, 4, 6, 8, 10};
    if (state.x_list.empty()) state.x_list = {-0.9, -0.5, -0.2, 0.2, 0.5, 0.9};
    const auto format = parse_format(state.format);
    const auto rows = tfim::run_oracle(state.n_list, state.x_list, state.jobs);
    emit(state, format == tfim::OutputFormat::Csv ? tfim::to_csv(rows)
                                                  : tfim::to_json(rows));
    return tfim::oracle_disagrees(rows) ? kExitOracle : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Species entanglement of the transverse-field Ising chain"};
    app.require_subcommand(1);
    CliState state;

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Entanglement density and derivatives over an x grid");
    sweep->add_option("--x-min", state.x_min, "Lower end of the coupling range");
    sweep->add_option("--x-max", state.x_max, "Upper end of the coupling range");
    sweep->add_option("--steps", state.steps, "Number of grid points");
    sweep->add_option("--sizes", state.sizes,
                      "Comma-separated chain sizes; \"inf\" = thermodynamic limit")
        ->delimiter(',');
    sweep->add_option("--sector", state.sector,
                      "Momentum sector for finite sizes: even or odd");
    sweep->add_option("--quad-tol", state.quad_tol, "Quadrature tolerance");
    sweep->add_option("--step", state.step, "Finite-difference step");
    sweep->add_flag("--refine-critical,!--no-refine-critical",
                    state.refine_critical,
                    "Insert extra samples geometrically spaced toward x = +-1");
    add_common(sweep, state);

    CLI::App* density = app.add_subcommand(
        "density", "Integrated eigenvalue density g(p, x) on a p grid");
    density->add_option("--x-list", state.x_list, "Coupling values")->delimiter(',');
    density->add_option("--p-steps", state.p_steps, "Points of the p grid");
    add_common(density, state);

    CLI::App* critical =
        app.add_subcommand("critical", "Jump and divergence report (JSON)");
    add_common(critical, state, false);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "Mode-sum vs exact-diagonalization cross-check table");
    oracle->add_option("--n-list", state.n_list, "Chain sizes (even, <= 12)")
        ->delimiter(',');
    oracle->add_option("--x-list", state.x_list, "Coupling values")->delimiter(',');
    add_common(oracle, state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sweep->parsed()) return run_sweep_cmd(*sweep, state);
        if (density->parsed()) return run_density_cmd(*density, state);
        if (critical->parsed()) return run_critical_cmd(*critical, state);
        if (oracle->parsed()) return run_oracle_cmd(*oracle, state);
        std::fputs("no subcommand\n", stderr);
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumerical;
    }
}
