// qlimit: command-line front end for the price-limited return model.
//
//   qlimit gaussian  --q 10 --kappa 0.2 --out gaussian.csv     (or --preset fig1)
//   qlimit evolve    --preset fig2 --out runs/fig2 [--dt 0.5] [--method magnus2]
//   qlimit operators --which trend --q 2 --out trend.csv
//   qlimit check
//
// Exit codes: 0 success, 2 config/usage error, 3 numerical failure, 4 I/O error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlimit/config.hpp"
#include "qlimit/errors.hpp"
#include "qlimit/figures.hpp"
#include "qlimit/io.hpp"
#include "qlimit/selfcheck.hpp"

namespace fs = std::filesystem;
using namespace qlimit;

namespace {

fs::path default_out(const std::string& flag, const char* fallback) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("QLIMIT_OUT"); env && *env) return fs::path(env) / fallback;
    return fallback;
}

struct EvolveFlags {
    std::string config;
    std::string preset;
    std::string out;
    std::string method;
    std::optional<double> dt, kappa, mu, beta, omega, t_end;
    std::optional<int> q;
    std::vector<double> snapshots;
    std::vector<double> sweep_kappa;
};

SimulationConfig resolve_config(const EvolveFlags& f) {
    SimulationConfig c;
    if (!f.config.empty() && !f.preset.empty()) {
        throw ConfigError("use either --config or --preset, not both");
    }
    if (!f.config.empty()) {
        c = load_config(f.config);
    } else if (!f.preset.empty()) {
        c = preset_config(f.preset);
    } else {
        if (!f.q || !f.kappa || !f.mu || !f.beta || !f.omega || !f.t_end) {
            throw ConfigError("without --config or --preset, give --q --kappa --mu --beta --omega --t-end");
        }
        c.snapshots.clear();
    }
    if (f.q) c.q = *f.q;
    if (f.kappa) c.kappa = *f.kappa;
    if (f.mu) c.mu = *f.mu;
    if (f.beta) c.beta = *f.beta;
    if (f.omega) c.omega = *f.omega;
    if (f.t_end) c.t_end = *f.t_end;
    if (f.dt) c.dt = *f.dt;
    if (!f.method.empty()) {
        try {
            c.method = method_from_string(f.method);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config key 'method': ") + e.what());
        }
    }
    if (!f.snapshots.empty()) {
        c.snapshots = f.snapshots;
    } else if (c.snapshots.empty()) {
        c.snapshots = {0.0};
        if (c.t_end > 0.0) c.snapshots.push_back(c.t_end);
    }
    return c;
}

int run_check() {
    const auto results = run_invariant_checks();
    std::size_t failed = 0;
    std::cout << std::left << std::setw(6) << "result" << "  " << std::setw(11) << "module"
              << std::setw(52) << "invariant" << "measured / tolerance\n";
    for (const auto& r : results) {
        std::cout << std::setw(6) << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(11) << r.module
                  << std::setw(52) << r.name << r.measured << " / " << r.tolerance << '\n';
        if (!r.passed) ++failed;
    }
    std::cout << results.size() - failed << '/' << results.size() << " invariants passed\n";
    if (failed > 0) {
        for (const auto& r : results) {
            if (!r.passed) std::cerr << "failed invariant: " << r.module << ": " << r.name << '\n';
        }
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-dimensional quantum model of daily returns under a price limit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    // gaussian
    auto* gaussian = app.add_subcommand("gaussian", "Discrete Gaussian gamma_kappa / Upsilon_kappa as CSV");
    int g_q = 10;
    double g_kappa = 0.2;
    std::string g_out, g_preset;
    gaussian->add_option("--q", g_q, "Price limit in percent (lattice -q..q)");
    gaussian->add_option("--kappa", g_kappa, "Width parameter kappa > 0");
    gaussian->add_option("--preset", g_preset, "fig1: q=10 and kappa = 0.2, 1, 2 (one CSV each)");
    gaussian->add_option("--out", g_out, "Output CSV (a directory with --preset)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "Integrate the market Schroedinger equation");
    EvolveFlags ef;
    evolve_cmd->add_option("--config", ef.config, "JSON config file");
    evolve_cmd->add_option("--preset", ef.preset, "Named config (fig2)");
    evolve_cmd->add_option("--out", ef.out, "Output directory");
    evolve_cmd->add_option("--dt", ef.dt, "Time step in seconds");
    evolve_cmd->add_option("--method", ef.method, "strang, magnus2 or reference");
    evolve_cmd->add_option("--q", ef.q, "Price limit in percent");
    evolve_cmd->add_option("--kappa", ef.kappa, "Initial-state width");
    evolve_cmd->add_option("--mu", ef.mu, "Kinetic constant");
    evolve_cmd->add_option("--beta", ef.beta, "Information coupling");
    evolve_cmd->add_option("--omega", ef.omega, "Information frequency (rad/s)");
    evolve_cmd->add_option("--t-end", ef.t_end, "Final time in seconds");
    evolve_cmd->add_option("--snapshots", ef.snapshots, "Snapshot times")->delimiter(',');
    evolve_cmd->add_option("--sweep-kappa", ef.sweep_kappa, "Run independent evolutions for these kappas")
        ->delimiter(',');

    // operators
    auto* ops = app.add_subcommand("operators", "Dump an operator matrix as CSV");
    OperatorRequest req;
    std::string which = "rate", o_out;
    ops->add_option("--which", which, "rate, trend, price, kinetic or hamiltonian");
    ops->add_option("--q", req.q, "Price limit in percent");
    ops->add_option("--p0", req.p0, "Reference price (price)");
    ops->add_option("--scale", req.scale, "Return unit: 1 literal, 0.01 percent (price)");
    ops->add_option("--mu", req.mu, "Kinetic constant (kinetic, hamiltonian)");
    ops->add_option("--beta", req.beta, "Coupling (hamiltonian)");
    ops->add_option("--omega", req.omega, "Frequency (hamiltonian)");
    ops->add_option("--t", req.t, "Time in seconds (hamiltonian)");
    ops->add_option("--out", o_out, "Output CSV");

    auto* check = app.add_subcommand("check", "Run every module's invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*gaussian) {
            if (g_preset == "fig1") {
                const fs::path dir = default_out(g_out, "fig1");
                for (double kappa : figures::kGaussianFigureKappas) {
                    const fs::path path = dir / ("gaussian_kappa" + format_double(kappa) + ".csv");
                    cmd_gaussian(figures::kGaussianFigureQ, kappa, path);
                    std::cout << path.string() << '\n';
                }
            } else if (!g_preset.empty()) {
                throw ConfigError("unknown gaussian preset '" + g_preset + "' (expected fig1)");
            } else {
                const fs::path path = default_out(g_out, "gaussian.csv");
                cmd_gaussian(g_q, g_kappa, path);
                std::cout << path.string() << '\n';
            }
        } else if (*evolve_cmd) {
            const SimulationConfig config = resolve_config(ef);
            const fs::path dir = default_out(ef.out, "qlimit_run");
            if (!ef.sweep_kappa.empty()) {
                for (const auto& r : cmd_evolve_sweep(config, ef.sweep_kappa, dir)) {
                    std::cout << r.manifest.string() << "  norm_drift=" << r.trajectory.norm_drift << '\n';
                }
            } else {
                const auto r = cmd_evolve(config, dir);
                for (const auto& note : r.trajectory.adjustments) std::cerr << "note: " << note << '\n';
                std::cout << r.manifest.string() << "  norm_drift=" << r.trajectory.norm_drift << '\n';
            }
        } else if (*ops) {
            req.kind = operator_kind_from_string(which);
            const fs::path path = default_out(o_out, (which + ".csv").c_str());
            cmd_operators(req, path);
            std::cout << path.string() << '\n';
        } else if (*check) {
            return run_check();
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
