#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qlimit/lattice.hpp"

namespace qlimit {

/// Time integrators for i dPsi/dt = H(t) Psi, H(t) = T^2/(2 mu) + beta cos(omega t) R.
enum class Method {
    strang,    ///< potential half-step, exact kinetic step in the Fourier basis, potential half-step
    magnus2,   ///< exponential midpoint: exp(-i H(t + dt/2) dt)
    reference, ///< magnus2 at dt / 8; the in-repo convergence yardstick
};

std::string_view to_string(Method m);
/// Throws std::invalid_argument for unknown names.
Method method_from_string(std::string_view name);

/// One evolution run. Times are in seconds with hbar = 1.
struct SimulationConfig {
    int q = 10;
    double kappa = 0.2;
    double mu = 1.0;
    double beta = 0.1;
    double omega = 1.0 / 5000.0;
    double t_end = 0.0;
    double dt = 1.0;
    std::vector<double> snapshots{0.0};
    Method method = Method::strang;

    friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Checks a configuration and snaps t_end and the snapshot times onto multiples of dt.
///
/// Returns one human-readable note per time that had to be moved. Throws ConfigError
/// whose message names the offending key (q, kappa, mu, dt, t_end, omega, beta,
/// snapshots).
std::vector<std::string> validate_config(SimulationConfig& config);

struct Snapshot {
    double t;
    StateVector psi;
};

struct Trajectory {
    SimulationConfig config;  ///< validated copy actually run
    std::vector<Snapshot> states;
    double norm_drift = 0.0;  ///< max over all steps of |1 - ||Psi|||
    std::uint64_t steps = 0;  ///< integrator steps taken
    std::vector<std::string> adjustments;
};

struct ObservablesRow {
    double t;
    double mean_rate;
    double mean_trend;
    double norm;
};

/// Upsilon_kappa on the configured lattice.
StateVector initial_state(const SimulationConfig& config);

/// Single Strang step from t to t + dt. The two potential half-steps sample
/// cos(omega .) at t + dt/4 and t + 3dt/4.
StateVector step_strang(const StateVector& psi, double t, double dt, const SimulationConfig& config);

/// Single exponential-midpoint step from t to t + dt via a fresh Jacobi eigendecomposition
/// of H(t + dt/2). Throws NumericalError if the eigen residual exceeds 1e-10.
StateVector step_magnus2(const StateVector& psi, double t, double dt, const SimulationConfig& config);

/// Closed-form free evolution F^+ diag(exp(-i n^2 t / 2mu)) F Psi.
StateVector exact_free_evolution(const StateVector& psi, double t, double mu);

/// Fixed-step integrator that keeps its per-step scratch (phases, eigenvectors).
class Stepper {
public:
    virtual ~Stepper() = default;
    /// Advances amplitudes in place from t to t + dt().
    virtual void advance(Eigen::VectorXcd& psi, double t) = 0;
    virtual double dt() const = 0;
};

/// Builds a stepper for strang or magnus2; reference is not a stepping scheme.
std::unique_ptr<Stepper> make_stepper(Method method, const SimulationConfig& config, double dt);

/// Applies `steps` steps of size dt (dt may be negative) starting at time t0.
/// Throws NumericalError naming the step index if amplitudes become non-finite.
StateVector propagate(const StateVector& psi0, double t0, double dt, std::uint64_t steps,
                      Method method, const SimulationConfig& config);

/// Runs a configuration from t = 0 with the standard initial state.
Trajectory evolve(const SimulationConfig& config);

/// Same, from an arbitrary initial state on the configured lattice.
Trajectory evolve(const SimulationConfig& config, const StateVector& psi0);

/// <R>, <T> and ||Psi|| per snapshot.
std::vector<ObservablesRow> observables_series(const Trajectory& trajectory);

} // namespace qlimit
