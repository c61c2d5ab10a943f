#include "qlimit/io.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "qlimit/config.hpp"
#include "qlimit/errors.hpp"
#include "qlimit/figures.hpp"
#include "qlimit/theta.hpp"

#ifndef QLIMIT_VERSION
#define QLIMIT_VERSION "0.0.0"
#endif

namespace qlimit {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view tool_version() { return QLIMIT_VERSION; }

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool has_published_parameters(const SimulationConfig& c) {
    const SimulationConfig fig = figures::fig2_config();
    return c.q == fig.q && c.kappa == fig.kappa && c.mu == fig.mu && c.beta == fig.beta &&
           c.omega == fig.omega;
}

} // namespace

void write_gaussian_csv(std::ostream& out, int q, double kappa) {
    const Lattice lattice(q);
    const GaussianParams params(kappa);
    const StateVector gamma = gamma_kappa(lattice, params);
    const StateVector upsilon = normalize(gamma);
    out << "n,gamma,upsilon,prob\n";
    for (int n = -q; n <= q; ++n) {
        const double g = gamma.amplitude(n).real();
        const double u = upsilon.amplitude(n).real();
        out << n << ',' << format_double(g) << ',' << format_double(u) << ','
            << format_double(u * u) << '\n';
    }
}

void cmd_gaussian(int q, double kappa, const fs::path& out) {
    std::ostringstream csv;  // render first so bad parameters leave no file behind
    write_gaussian_csv(csv, q, kappa);
    if (out.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(out.parent_path(), ec);
    }
    auto file = open_for_write(out);
    file << csv.str();
    finish(file, out);
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snap) {
    out << "t,n,re,im,prob\n";
    const std::string t = format_double(snap.t);
    const int q = snap.psi.lattice().q();
    for (int n = -q; n <= q; ++n) {
        const Complex a = snap.psi.amplitude(n);
        out << t << ',' << n << ',' << format_double(a.real()) << ',' << format_double(a.imag())
            << ',' << format_double(std::norm(a)) << '\n';
    }
}

void write_observables_csv(std::ostream& out, std::span<const ObservablesRow> rows) {
    out << "t,mean_R,mean_T,norm\n";
    for (const auto& r : rows) {
        out << format_double(r.t) << ',' << format_double(r.mean_rate) << ','
            << format_double(r.mean_trend) << ',' << format_double(r.norm) << '\n';
    }
}

std::string snapshot_file_name(double t) { return "snapshot_t" + format_double(t) + ".csv"; }

EvolveOutputs cmd_evolve(const SimulationConfig& config, const fs::path& outdir) {
    const std::string started = utc_now();
    std::vector<fs::path> written;
    auto remove_partial = [&] {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
    };

    try {
        Trajectory traj = evolve(config);
        const std::vector<ObservablesRow> obs = observables_series(traj);

        std::error_code ec;
        fs::create_directories(outdir, ec);
        if (ec) throw IoError("cannot create output directory " + outdir.string());

        EvolveOutputs result;
        for (const auto& snap : traj.states) {
            const fs::path path = outdir / snapshot_file_name(snap.t);
            written.push_back(path);
            auto file = open_for_write(path);
            write_snapshot_csv(file, snap);
            finish(file, path);
            result.snapshot_files.push_back(path);
        }

        result.observables = outdir / "observables.csv";
        written.push_back(result.observables);
        {
            auto file = open_for_write(result.observables);
            write_observables_csv(file, obs);
            finish(file, result.observables);
        }

        json manifest;
        manifest["tool"] = "qlimit";
        manifest["tool_version"] = std::string(tool_version());
        manifest["config"] = json::parse(emit_config_json(traj.config));
        manifest["started"] = started;
        manifest["finished"] = utc_now();
        manifest["norm_drift"] = traj.norm_drift;
        manifest["steps"] = traj.steps;
        manifest["adjustments"] = traj.adjustments;
        json outputs = json::array();
        for (const auto& p : result.snapshot_files) outputs.push_back(p.filename().string());
        outputs.push_back(result.observables.filename().string());
        manifest["outputs"] = outputs;

        if (has_published_parameters(traj.config)) {
            json panels = json::array();
            for (const auto& c : figures::compare_to_evolution_panels(traj)) {
                panels.push_back({{"t", c.t},
                                  {"peak_n", c.peak_n},
                                  {"peak_value", c.peak_value},
                                  {"figure_peak_n", c.figure_peak_n},
                                  {"figure_peak_value", c.figure_peak_value},
                                  {"max_abs_deviation", c.max_abs_deviation}});
            }
            manifest["figure_comparison"] = panels;
        }

        result.manifest = outdir / "manifest.json";
        written.push_back(result.manifest);
        auto file = open_for_write(result.manifest);
        file << manifest.dump(2) << '\n';
        finish(file, result.manifest);

        result.trajectory = std::move(traj);
        return result;
    } catch (...) {
        remove_partial();
        throw;
    }
}

std::vector<EvolveOutputs> cmd_evolve_sweep(const SimulationConfig& base,
                                            std::span<const double> kappas,
                                            const fs::path& outdir) {
    std::vector<std::future<EvolveOutputs>> jobs;
    jobs.reserve(kappas.size());
    for (double kappa : kappas) {
        SimulationConfig c = base;
        c.kappa = kappa;
        const fs::path dir = outdir / ("kappa_" + format_double(kappa));
        jobs.push_back(std::async(std::launch::async, [c, dir] { return cmd_evolve(c, dir); }));
    }
    std::vector<EvolveOutputs> results;
    results.reserve(jobs.size());
    for (auto& job : jobs) results.push_back(job.get());
    return results;
}

OperatorKind operator_kind_from_string(std::string_view name) {
    if (name == "rate") return OperatorKind::rate;
    if (name == "trend") return OperatorKind::trend;
    if (name == "price") return OperatorKind::price;
    if (name == "kinetic") return OperatorKind::kinetic;
    if (name == "hamiltonian") return OperatorKind::hamiltonian;
    throw std::invalid_argument("unknown operator '" + std::string(name) +
                                "' (expected rate, trend, price, kinetic or hamiltonian)");
}

HermitianOperator build_operator(const OperatorRequest& r) {
    const Lattice lattice(r.q);
    switch (r.kind) {
    case OperatorKind::rate: return rate_operator(lattice);
    case OperatorKind::trend: return trend_operator(lattice);
    case OperatorKind::price: return price_operator(lattice, r.p0, r.scale);
    case OperatorKind::kinetic: return kinetic_operator(lattice, r.mu);
    case OperatorKind::hamiltonian: return hamiltonian_at(lattice, r.t, r.mu, r.beta, r.omega);
    }
    throw std::invalid_argument("unknown operator kind");
}

void write_operator_csv(std::ostream& out, const HermitianOperator& op) {
    const int q = op.lattice().q();
    out << 'k';
    for (int n = -q; n <= q; ++n) out << ",re_" << n << ",im_" << n;
    out << '\n';
    for (int k = -q; k <= q; ++k) {
        out << k;
        for (int n = -q; n <= q; ++n) {
            const Complex a = op.at(k, n);
            out << ',' << format_double(a.real()) << ',' << format_double(a.imag());
        }
        out << '\n';
    }
}

void cmd_operators(const OperatorRequest& request, const fs::path& out) {
    const HermitianOperator op = build_operator(request);
    const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
    if (op.hermiticity_defect() > HermitianOperator::kHermitianTolerance * scale) {
        throw NumericalError("operator failed the Hermiticity check before writing");
    }
    if (out.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(out.parent_path(), ec);
    }
    auto file = open_for_write(out);
    write_operator_csv(file, op);
    finish(file, out);
}

} // namespace qlimit
