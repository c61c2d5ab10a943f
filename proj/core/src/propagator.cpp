#include "qlimit/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qlimit/errors.hpp"
#include "qlimit/fourier.hpp"
#include "qlimit/hermitian_eigen.hpp"
#include "qlimit/operators.hpp"
#include "qlimit/theta.hpp"

namespace qlimit {

namespace {

constexpr int kReferenceRefinement = 8;
// Eigenvector guesses are re-orthonormalized every step; a full eigen residual
// check runs at this interval.
constexpr std::uint64_t kResidualCheckInterval = 1024;
constexpr double kMaxEigenResidual = 1e-10;

Eigen::ArrayXd lattice_points(const Lattice& lattice) {
    return Eigen::ArrayXd::LinSpaced(lattice.dim(), -lattice.q(), lattice.q());
}

double coupling(const SimulationConfig& c, double t) { return c.beta * std::cos(c.omega * t); }

// psi(n) *= exp(-i * strength * n).
void apply_linear_phase(Eigen::VectorXcd& psi, const Eigen::ArrayXd& n, double strength) {
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi[i] *= std::polar(1.0, -strength * n[i]);
}

class StrangStepper final : public Stepper {
public:
    StrangStepper(const SimulationConfig& config, double dt)
        : config_(config), dt_(dt), n_(lattice_points(Lattice(config.q))),
          dft_(dft_matrices(Lattice(config.q))), kinetic_(n_.size()), scratch_(n_.size()) {
        for (Eigen::Index i = 0; i < n_.size(); ++i) {
            kinetic_[i] = std::polar(1.0, -n_[i] * n_[i] * dt_ / (2.0 * config_.mu));
        }
    }

    void advance(Eigen::VectorXcd& psi, double t) override {
        apply_linear_phase(psi, n_, coupling(config_, t + 0.25 * dt_) * 0.5 * dt_);
        scratch_.noalias() = dft_->forward * psi;
        scratch_.array() *= kinetic_.array();
        psi.noalias() = dft_->adjoint * scratch_;
        apply_linear_phase(psi, n_, coupling(config_, t + 0.75 * dt_) * 0.5 * dt_);
    }

    double dt() const override { return dt_; }

private:
    SimulationConfig config_;
    double dt_;
    Eigen::ArrayXd n_;
    std::shared_ptr<const DftMatrices> dft_;
    Eigen::VectorXcd kinetic_;
    Eigen::VectorXcd scratch_;
};

// T^2 / (2 mu) is real symmetric: (1 / 2 mu d) sum_m m^2 cos(2 pi m (k - n) / d).
Eigen::MatrixXd real_kinetic_matrix(const Lattice& lattice, double mu) {
    const int d = lattice.dim();
    const int q = lattice.q();
    Eigen::VectorXd by_offset(d);
    for (int delta = 0; delta < d; ++delta) {
        double sum = 0.0;
        for (int m = -q; m <= q; ++m) {
            const int r = ((m * delta) % d + d) % d;
            sum += static_cast<double>(m) * m * std::cos(2.0 * std::numbers::pi * r / d);
        }
        by_offset[delta] = sum / (2.0 * mu * d);
    }
    Eigen::MatrixXd k(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) k(i, j) = by_offset[std::abs(i - j)];
    }
    return k;
}

// Modified Gram-Schmidt on the columns, in place.
void orthonormalize(Eigen::MatrixXd& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        for (Eigen::Index k = 0; k < j; ++k) {
            v.col(j) -= v.col(k).dot(v.col(j)) * v.col(k);
        }
        v.col(j).normalize();
    }
}

// H(t) is real symmetric in the return basis, so the midpoint exponential is
// V diag(exp(-i lambda dt)) V^T with real orthogonal V. Each step warm-starts the
// Jacobi solver from the previous eigenvectors.
class MagnusStepper final : public Stepper {
public:
    MagnusStepper(const SimulationConfig& config, double dt)
        : config_(config), dt_(dt), n_(lattice_points(Lattice(config.q))),
          kinetic_(real_kinetic_matrix(Lattice(config.q), config.mu)),
          vectors_(Eigen::MatrixXd::Identity(n_.size(), n_.size())), h_(kinetic_),
          re_(n_.size()), im_(n_.size()) {}

    void advance(Eigen::VectorXcd& psi, double t) override {
        h_ = kinetic_;
        h_.diagonal().array() += coupling(config_, t + 0.5 * dt_) * n_;

        SymmetricEigensystem eig = jacobi_eigh(h_, vectors_);
        orthonormalize(eig.vectors);
        if (calls_++ % kResidualCheckInterval == 0) {
            const double residual = eigen_residual(h_, eig);
            if (!(residual <= kMaxEigenResidual)) {
                std::ostringstream msg;
                msg << "eigendecomposition residual " << residual << " exceeds "
                    << kMaxEigenResidual;
                throw NumericalError(msg.str());
            }
        }
        vectors_ = std::move(eig.vectors);

        re_.noalias() = vectors_.transpose() * psi.real();
        im_.noalias() = vectors_.transpose() * psi.imag();
        for (Eigen::Index i = 0; i < re_.size(); ++i) {
            const Complex z = Complex(re_[i], im_[i]) * std::polar(1.0, -eig.values[i] * dt_);
            re_[i] = z.real();
            im_[i] = z.imag();
        }
        psi.real() = vectors_ * re_;
        psi.imag() = vectors_ * im_;
    }

    double dt() const override { return dt_; }

private:
    SimulationConfig config_;
    double dt_;
    Eigen::ArrayXd n_;
    Eigen::MatrixXd kinetic_;
    Eigen::MatrixXd vectors_;
    Eigen::MatrixXd h_;
    Eigen::VectorXd re_;
    Eigen::VectorXd im_;
    std::uint64_t calls_ = 0;
};

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

std::string format_adjustment(const char* what, double from, double to) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " " << from << " moved to " << to << " (multiple of dt)";
    return msg.str();
}

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
    case Method::strang: return "strang";
    case Method::magnus2: return "magnus2";
    case Method::reference: return "reference";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    if (name == "strang") return Method::strang;
    if (name == "magnus2") return Method::magnus2;
    if (name == "reference") return Method::reference;
    throw std::invalid_argument("unknown method '" + std::string(name) +
                                "' (expected strang, magnus2 or reference)");
}

std::vector<std::string> validate_config(SimulationConfig& c) {
    auto fail = [](const std::string& key, const std::string& why) {
        throw ConfigError("config key '" + key + "': " + why);
    };
    if (c.q < 1) fail("q", "must be an integer >= 1");
    if (!(c.kappa > 0.0) || !std::isfinite(c.kappa)) fail("kappa", "must be positive");
    if (!(c.mu > 0.0) || !std::isfinite(c.mu)) fail("mu", "must be positive");
    if (!(c.dt > 0.0) || !std::isfinite(c.dt)) fail("dt", "must be positive");
    if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) fail("t_end", "must be >= 0");
    if (!std::isfinite(c.beta)) fail("beta", "must be finite");
    if (!std::isfinite(c.omega)) fail("omega", "must be finite");
    if (c.snapshots.empty()) fail("snapshots", "must list at least one time");

    std::vector<std::string> notes;
    for (std::size_t i = 0; i < c.snapshots.size(); ++i) {
        const double s = c.snapshots[i];
        if (!std::isfinite(s) || s < 0.0 || s > c.t_end) fail("snapshots", "times must lie in [0, t_end]");
        if (i > 0 && !(s > c.snapshots[i - 1])) fail("snapshots", "times must be strictly ascending");
    }

    const double steps = std::round(c.t_end / c.dt);
    if (steps > 1e12) fail("dt", "too many steps for t_end");
    const double t_end = steps * c.dt;
    if (!same_time(t_end, c.t_end)) notes.push_back(format_adjustment("t_end", c.t_end, t_end));
    c.t_end = t_end;

    for (std::size_t i = 0; i < c.snapshots.size(); ++i) {
        const double snapped = std::min(std::round(c.snapshots[i] / c.dt) * c.dt, c.t_end);
        if (!same_time(snapped, c.snapshots[i])) {
            notes.push_back(format_adjustment("snapshot", c.snapshots[i], snapped));
        }
        c.snapshots[i] = snapped;
        if (i > 0 && !(c.snapshots[i] > c.snapshots[i - 1])) {
            fail("snapshots", "two times snap onto the same multiple of dt");
        }
    }
    return notes;
}

StateVector initial_state(const SimulationConfig& config) {
    return upsilon_kappa(Lattice(config.q), GaussianParams(config.kappa));
}

StateVector step_strang(const StateVector& psi, double t, double dt, const SimulationConfig& config) {
    if (psi.lattice().q() != config.q) throw std::invalid_argument("state lattice does not match config");
    StrangStepper stepper(config, dt);
    Eigen::VectorXcd amps = psi.amplitudes();
    stepper.advance(amps, t);
    return StateVector(psi.lattice(), std::move(amps));
}

StateVector step_magnus2(const StateVector& psi, double t, double dt, const SimulationConfig& config) {
    if (psi.lattice().q() != config.q) throw std::invalid_argument("state lattice does not match config");
    const HermitianOperator h = hamiltonian_at(psi.lattice(), t + 0.5 * dt, config.mu, config.beta,
                                               config.omega);
    const HermitianEigensystem eig = jacobi_eigh(h.matrix());
    const double residual = eigen_residual(h.matrix(), eig);
    if (!(residual <= kMaxEigenResidual)) {
        std::ostringstream msg;
        msg << "eigendecomposition residual " << residual << " exceeds " << kMaxEigenResidual;
        throw NumericalError(msg.str());
    }
    Eigen::VectorXcd coeffs = eig.vectors.adjoint() * psi.amplitudes();
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= std::polar(1.0, -eig.values[i] * dt);
    return StateVector(psi.lattice(), eig.vectors * coeffs);
}

StateVector exact_free_evolution(const StateVector& psi, double t, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    const Lattice& lattice = psi.lattice();
    const auto dft = dft_matrices(lattice);
    const Eigen::ArrayXd n = lattice_points(lattice);
    Eigen::VectorXcd phi = dft->forward * psi.amplitudes();
    for (Eigen::Index i = 0; i < phi.size(); ++i) phi[i] *= std::polar(1.0, -n[i] * n[i] * t / (2.0 * mu));
    return StateVector(lattice, dft->adjoint * phi);
}

std::unique_ptr<Stepper> make_stepper(Method method, const SimulationConfig& config, double dt) {
    switch (method) {
    case Method::strang: return std::make_unique<StrangStepper>(config, dt);
    case Method::magnus2: return std::make_unique<MagnusStepper>(config, dt);
    case Method::reference: break;
    }
    throw std::invalid_argument("reference is magnus2 at a refined step; build a magnus2 stepper");
}

namespace {

void check_finite(const Eigen::VectorXcd& psi, std::uint64_t step) {
    if (!psi.allFinite()) {
        throw NumericalError("propagation produced non-finite amplitudes at step " +
                             std::to_string(step));
    }
}

} // namespace

StateVector propagate(const StateVector& psi0, double t0, double dt, std::uint64_t steps,
                      Method method, const SimulationConfig& config) {
    if (method == Method::reference) {
        method = Method::magnus2;
        dt /= kReferenceRefinement;
        steps *= kReferenceRefinement;
    }
    auto stepper = make_stepper(method, config, dt);
    Eigen::VectorXcd amps = psi0.amplitudes();
    for (std::uint64_t k = 0; k < steps; ++k) {
        stepper->advance(amps, t0 + static_cast<double>(k) * dt);
        check_finite(amps, k);
    }
    return StateVector(psi0.lattice(), std::move(amps));
}

Trajectory evolve(const SimulationConfig& config) {
    SimulationConfig checked = config;
    validate_config(checked);
    return evolve(config, initial_state(checked));
}

Trajectory evolve(const SimulationConfig& config, const StateVector& psi0) {
    Trajectory out;
    out.config = config;
    out.adjustments = validate_config(out.config);
    const SimulationConfig& c = out.config;
    if (psi0.lattice().q() != c.q) throw std::invalid_argument("initial state lattice does not match config");

    Method method = c.method;
    double dt = c.dt;
    std::uint64_t refinement = 1;
    if (method == Method::reference) {
        method = Method::magnus2;
        refinement = kReferenceRefinement;
        dt /= kReferenceRefinement;
    }
    const auto coarse_steps = static_cast<std::uint64_t>(std::llround(c.t_end / c.dt));
    const std::uint64_t total = coarse_steps * refinement;

    std::vector<std::uint64_t> marks;
    marks.reserve(c.snapshots.size());
    for (double s : c.snapshots) marks.push_back(static_cast<std::uint64_t>(std::llround(s / c.dt)) * refinement);

    auto stepper = make_stepper(method, c, dt);
    Eigen::VectorXcd amps = psi0.amplitudes();
    std::size_t next = 0;
    double drift = std::abs(1.0 - amps.norm());

    for (std::uint64_t k = 0;; ++k) {
        while (next < marks.size() && marks[next] == k) {
            out.states.push_back({c.snapshots[next], StateVector(psi0.lattice(), amps)});
            ++next;
        }
        if (k == total) break;
        stepper->advance(amps, static_cast<double>(k) * dt);
        check_finite(amps, k);
        drift = std::max(drift, std::abs(1.0 - amps.norm()));
    }
    out.norm_drift = drift;
    out.steps = total;
    return out;
}

std::vector<ObservablesRow> observables_series(const Trajectory& trajectory) {
    std::vector<ObservablesRow> rows;
    if (trajectory.states.empty()) return rows;
    const Lattice lattice = trajectory.states.front().psi.lattice();
    const HermitianOperator rate = rate_operator(lattice);
    const HermitianOperator trend = trend_operator(lattice);
    rows.reserve(trajectory.states.size());
    for (const auto& s : trajectory.states) {
        rows.push_back({s.t, expectation(rate, s.psi), expectation(trend, s.psi), s.psi.norm()});
    }
    return rows;
}

} // namespace qlimit
