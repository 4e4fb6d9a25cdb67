// SPDX-License-Identifier: Apache-2.0
// lamperti: classify heavy-tailed chains, solve for ν*, verify drift
// expansions and simulate passage times.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lamperti/classify.hpp"
#include "lamperti/config.hpp"
#include "lamperti/error.hpp"
#include "lamperti/lyapunov.hpp"
#include "lamperti/montecarlo.hpp"
#include "lamperti/selftest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lamperti;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    double quad_tol = 1e-10;
    double gamma_fault = 0.0;
};

RunConfig load(const Flags& f) {
    if (f.config.empty()) throw ConfigError("--config", "a config file is required");
    RunConfig cfg = load_config(f.config);
    if (f.seed) cfg.seed = f.seed;
    if (f.workers) cfg.workers = f.workers;
    if (f.out) cfg.out = f.out;
    return cfg;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json classification_json(const Classification& c) {
    return {{"phase", std::string(to_string(c.phase))},
            {"theorem_tag", c.theorem_tag},
            {"q_crit", optional_number(c.moment_exponent)},
            {"inclusivity", std::string(to_string(c.boundary_inclusive))},
            {"nu_star", optional_number(c.nu_star)},
            {"deciding_quantity", c.deciding_quantity}};
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

// Prints to stdout and, when an output directory is set, to `name` there.
void emit(const RunConfig& cfg, const std::string& name, const std::string& text) {
    std::cout << text;
    if (cfg.out) {
        fs::create_directories(*cfg.out);
        write_file(fs::path(*cfg.out) / name, text);
    }
}

int cmd_classify(const RunConfig& cfg) {
    emit(cfg, "classify.json", classification_json(classify(cfg.spec)).dump(2) + "\n");
    return kExitOk;
}

int cmd_nu_star(const RunConfig& cfg) {
    const NuStarResult r = nu_star(cfg.spec);
    const json j = {{"nu_star", r.nu_star},
                    {"bracket", {r.bracket.first, r.bracket.second}},
                    {"residual", r.residual},
                    {"iterations", r.iterations}};
    emit(cfg, "nu_star.json", j.dump(2) + "\n");
    return kExitOk;
}

int cmd_drift_verify(const RunConfig& cfg) {
    DriftRequest d = cfg.drift.value_or(DriftRequest{});
    if (!cfg.drift) d.i = cfg.spec.regime == Regime::HalfLine ? 0 : 2;
    const DriftReport rep = verify_expansion(cfg.spec, d.i, d.nu, d.x_grid);
    std::string csv = "x,numeric,predicted,normalized_error\n";
    for (std::size_t k = 0; k < rep.x_grid.size(); ++k) {
        csv += format_double(rep.x_grid[k]) + ',' + format_double(rep.numeric[k]) + ',' +
               format_double(rep.predicted[k]) + ',' + format_double(rep.normalized_error[k]) + '\n';
    }
    emit(cfg, "drift.csv", csv);
    std::cerr << "limit " << format_double(rep.limit) << ", converged " << (rep.converged ? "yes" : "no") << '\n';
    return rep.converged ? kExitOk : kExitFailure;
}

int cmd_simulate(RunConfig cfg) {
    if (!cfg.out) cfg.out = "out";
    const SimConfig sim = make_sim_config(cfg);
    const auto runs = run_trajectories(sim);
    const fs::path dir(*cfg.out);
    fs::create_directories(dir);

    std::ostringstream traj;
    write_trajectories_csv(traj, runs);
    write_file(dir / "trajectories.csv", traj.str());

    json summary;
    summary["n_traj"] = sim.n_traj;
    summary["horizon"] = sim.horizon;
    const PhaseFractions f = phase_fractions(runs, effective_escape_level(sim));
    summary["phase_fractions"] = {{"return", f.return_fraction},
                                  {"escape", f.escape_fraction},
                                  {"oscillation", f.oscillation_fraction},
                                  {"directional", f.directional_fraction},
                                  {"escape_level", f.escape_level}};
    SurvivalEstimate est = survival_curve(runs, sim.horizon);
    try {
        est = fit_survival(runs, sim.horizon);
        summary["survival_fit"] = {{"exponent", est.exponent()},
                                   {"std_error", est.std_error},
                                   {"regression_std_error", est.regression_std_error},
                                   {"fit_window", {est.fit_window.first, est.fit_window.second}},
                                   {"fit_points", est.fit_points}};
    } catch (const InsufficientDataError& e) {
        summary["survival_fit"] = {{"error", e.what()}};
    }
    std::ostringstream surv;
    write_survival_csv(surv, est);
    write_file(dir / "survival.csv", surv.str());

    try {
        const Classification c = classify(cfg.spec);
        summary["classification"] = classification_json(c);
        if (c.moment_exponent && *c.moment_exponent > 0.0) {
            const double q = *c.moment_exponent;
            json moments = json::array();
            for (const auto& g : moment_growth(runs, sim.horizon, {0.5 * q, 2.0 * q}))
                moments.push_back({{"q", g.q}, {"caps", g.caps}, {"capped_mean", g.capped_mean},
                                   {"last_ratio", g.last_ratio}, {"verdict", g.verdict}});
            summary["moments"] = moments;
        }
    } catch (const Error& e) {
        summary["classification"] = {{"error", e.what()}};
    }
    write_file(dir / "summary.json", summary.dump(2) + "\n");

    const json manifest = {{"version", kVersion},
                           {"seed", sim.master_seed},
                           {"workers", sim.workers},
                           {"config", config_to_json(cfg)}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    return kExitOk;
}

int cmd_phase_diagram(const RunConfig& cfg) {
    if (cfg.sweep.empty() || cfg.sweep.size() > 2) throw ConfigError("sweep", "phase-diagram needs one or two sweep axes");
    std::string csv;
    for (const auto& ax : cfg.sweep) csv += ax.param + ',';
    csv += "phase,q_crit,theorem_tag\n";
    const SweepAxis& a0 = cfg.sweep[0];
    const int n1 = cfg.sweep.size() == 2 ? cfg.sweep[1].steps : 1;
    for (int i = 0; i < a0.steps; ++i) {
        for (int j = 0; j < n1; ++j) {
            ChainSpec s = cfg.spec;
            std::string row;
            set_param(s, a0.param, a0.value(i));
            row += format_double(a0.value(i)) + ',';
            if (cfg.sweep.size() == 2) {
                set_param(s, cfg.sweep[1].param, cfg.sweep[1].value(j));
                row += format_double(cfg.sweep[1].value(j)) + ',';
            }
            try {
                const Classification c = classify(s);
                row += std::string(to_string(c.phase)) + ',' +
                       (c.moment_exponent ? format_double(*c.moment_exponent) : std::string()) + ",\"" +
                       c.theorem_tag + "\"";
            } catch (const InfeasibleDrift&) {
                row += "Infeasible,,\"drift not reachable by the light component\"";
            } catch (const InfeasibleWeight&) {
                row += "Infeasible,,\"heavy weight out of range\"";
            } catch (const DomainError& e) {
                row += std::string("Invalid,,\"") + e.what() + "\"";
            }
            csv += row + '\n';
        }
    }
    emit(cfg, "phase_diagram.csv", csv);
    return kExitOk;
}

int cmd_selftest(const Flags& f) {
    SelftestOptions opt;
    opt.quad_tol = f.quad_tol;
    opt.gamma_fault = f.gamma_fault;
    const SelftestReport rep = run_selftest(opt);
    for (const auto& c : rep.checks) {
        std::printf("%-22s max_error %-12.4g tolerance %-10.3g %s\n", c.name.c_str(), c.max_error, c.tolerance,
                    c.passed ? "PASS" : "FAIL");
    }
    if (rep.passed()) return kExitOk;
    for (const auto& c : rep.checks) {
        if (!c.passed) std::fprintf(stderr, "selftest failed: %s\n", c.name.c_str());
    }
    return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heavy-tailed Lamperti chains: classification, drift checks and simulation"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Flags flags;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", flags.config, "JSON config file");
        if (needs_config) opt->required();
        sub->add_option("--seed", flags.seed, "master seed (overrides config)");
        sub->add_option("--workers", flags.workers, "worker threads (overrides config)")->check(CLI::PositiveNumber);
        sub->add_option("--out", flags.out, "output directory (overrides config)");
    };

    auto* classify_cmd = app.add_subcommand("classify", "phase, critical moment exponent and ν*");
    auto* nu_cmd = app.add_subcommand("nu-star", "solve the critical-drift equation for ν*");
    auto* drift_cmd = app.add_subcommand("drift-verify", "compare quadrature drifts with the expansion");
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo passage times");
    auto* diagram_cmd = app.add_subcommand("phase-diagram", "classify over a parameter sweep");
    auto* self_cmd = app.add_subcommand("selftest", "special-function and classifier identities");
    for (auto* s : {classify_cmd, nu_cmd, drift_cmd, sim_cmd, diagram_cmd}) add_common(s, true);
    add_common(self_cmd, false);
    self_cmd->add_option("--quad-tol", flags.quad_tol)->group("");
    self_cmd->add_option("--inject-gamma-fault", flags.gamma_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (self_cmd->parsed()) return cmd_selftest(flags);
        const RunConfig cfg = load(flags);
        if (classify_cmd->parsed()) return cmd_classify(cfg);
        if (nu_cmd->parsed()) return cmd_nu_star(cfg);
        if (drift_cmd->parsed()) return cmd_drift_verify(cfg);
        if (sim_cmd->parsed()) return cmd_simulate(cfg);
        if (diagram_cmd->parsed()) return cmd_phase_diagram(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
