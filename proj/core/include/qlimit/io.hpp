#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qlimit/operators.hpp"
#include "qlimit/propagator.hpp"

namespace qlimit {

/// Process exit codes of the qlimit tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

std::string_view tool_version();

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

/// CSV `n,gamma,upsilon,prob`, one row per lattice point in ascending n.
void write_gaussian_csv(std::ostream& out, int q, double kappa);
void cmd_gaussian(int q, double kappa, const std::filesystem::path& out);

/// CSV `t,n,re,im,prob` for one snapshot.
void write_snapshot_csv(std::ostream& out, const Snapshot& snapshot);
/// CSV `t,mean_R,mean_T,norm`.
void write_observables_csv(std::ostream& out, std::span<const ObservablesRow> rows);

/// Snapshot file name for time t, e.g. "snapshot_t1800.csv".
std::string snapshot_file_name(double t);

struct EvolveOutputs {
    std::vector<std::filesystem::path> snapshot_files;
    std::filesystem::path observables;
    std::filesystem::path manifest;
    Trajectory trajectory;
};

/// Runs the configuration and writes the snapshot CSVs, observables.csv and
/// manifest.json into outdir. The manifest records the config echo, timestamps,
/// norm drift, snapshot adjustments and (for the published parameters) the
/// deviation from the published panels. Files written before a failure are removed.
EvolveOutputs cmd_evolve(const SimulationConfig& config, const std::filesystem::path& outdir);

/// Independent runs over kappa values, executed concurrently, each into
/// outdir/kappa_<value>/. Results are returned in input order.
std::vector<EvolveOutputs> cmd_evolve_sweep(const SimulationConfig& base,
                                            std::span<const double> kappas,
                                            const std::filesystem::path& outdir);

enum class OperatorKind { rate, trend, price, kinetic, hamiltonian };

/// Throws std::invalid_argument for unknown names.
OperatorKind operator_kind_from_string(std::string_view name);

struct OperatorRequest {
    OperatorKind kind = OperatorKind::rate;
    int q = 10;
    double p0 = 100.0;    ///< price
    double scale = 1.0;   ///< price
    double mu = 1.0;      ///< kinetic, hamiltonian
    double beta = 0.1;    ///< hamiltonian
    double omega = 1.0 / 5000.0;
    double t = 0.0;
};

HermitianOperator build_operator(const OperatorRequest& request);

/// Matrix CSV: header `k,re_<n>,im_<n>,...` over n = -q..q, then one row per k.
void write_operator_csv(std::ostream& out, const HermitianOperator& op);
void cmd_operators(const OperatorRequest& request, const std::filesystem::path& out);

} // namespace qlimit
