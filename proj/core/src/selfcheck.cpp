#include "qlimit/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "qlimit/config.hpp"
#include "qlimit/figures.hpp"
#include "qlimit/fourier.hpp"
#include "qlimit/hermitian_eigen.hpp"
#include "qlimit/lattice.hpp"
#include "qlimit/operators.hpp"
#include "qlimit/propagator.hpp"
#include "qlimit/theta.hpp"

namespace qlimit {

namespace {

using std::numbers::pi;

class Suite {
public:
    explicit Suite(std::vector<CheckResult>& out) : out_(out) {}

    void check(const char* module, const char* name, double measured, double tolerance) {
        out_.push_back({module, name, measured, tolerance, measured <= tolerance});
    }

private:
    std::vector<CheckResult>& out_;
};

StateVector random_state(const Lattice& lattice, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(lattice.dim());
    for (auto& x : v) x = Complex(g(rng), g(rng));
    return normalize(StateVector(lattice, v));
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double max_diff(const StateVector& a, const StateVector& b) {
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

void lattice_checks(Suite& s, std::mt19937_64& rng) {
    const Lattice l(10);
    double cs = 0.0, expansion = 0.0, resolution = 0.0, idem = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::normal_distribution<double> g;
        Eigen::VectorXcd va(l.dim()), vb(l.dim());
        for (auto& x : va) x = Complex(g(rng), g(rng));
        for (auto& x : vb) x = Complex(g(rng), g(rng));
        const StateVector a(l, va), b(l, vb);
        const double lhs = std::norm(inner_product(a, b));
        const double rhs = inner_product(a, a).real() * inner_product(b, b).real();
        cs = std::max(cs, lhs - rhs);

        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(l.dim());
        Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(l.dim());
        for (int n = -l.q(); n <= l.q(); ++n) {
            const StateVector delta = delta_state(l, n);
            sum += a.amplitude(n) * delta.amplitudes();
            proj += inner_product(delta, a) * delta.amplitudes();
        }
        expansion = std::max(expansion, (sum - a.amplitudes()).cwiseAbs().maxCoeff());
        resolution = std::max(resolution, (proj - a.amplitudes()).cwiseAbs().maxCoeff());
        const StateVector once = normalize(a);
        idem = std::max(idem, max_diff(normalize(once), once));
    }
    s.check("lattice", "Cauchy-Schwarz |<a,b>|^2 - <a,a><b,b> <= 0", cs, 0.0);
    s.check("lattice", "basis expansion sum psi(n) delta_n = psi", expansion, 0.0);
    s.check("lattice", "resolution of identity", resolution, 1e-15);
    s.check("lattice", "normalize idempotent", idem, 1e-14);
}

void fourier_checks(Suite& s, std::mt19937_64& rng) {
    double unitary = 0.0, fourth = 0.0, parity = 0.0, dual = 0.0, adjoint = 0.0, inner = 0.0;
    for (int q = 1; q <= 10; ++q) {
        const Lattice l(q);
        const auto f = dft_matrices(l);
        const auto id = Eigen::MatrixXcd::Identity(l.dim(), l.dim());
        unitary = std::max({unitary, max_abs(f->forward * f->adjoint - id), max_abs(f->adjoint * f->forward - id)});
        const Eigen::MatrixXcd f2 = f->forward * f->forward;
        fourth = std::max(fourth, max_abs(f2 * f2 - id));
        for (int n = -q; n <= q; ++n) {
            const Eigen::VectorXcd moved = f2 * delta_state(l, n).amplitudes();
            parity = std::max(parity, (moved - delta_state(l, -n).amplitudes()).cwiseAbs().maxCoeff());
        }
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(l.dim(), l.dim());
        for (int n = -q; n <= q; ++n) {
            const auto v = tilde_delta(l, n).amplitudes();
            proj += v * v.adjoint();
        }
        dual = std::max(dual, max_abs(proj - id));
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector psi = random_state(l, rng);
            const StateVector phi = random_state(l, rng);
            adjoint = std::max(adjoint, std::abs(inner_product(apply_inverse_dft(phi), psi) -
                                                 inner_product(phi, apply_dft(psi))));
            inner = std::max(inner, std::abs(inner_product(apply_dft(psi), apply_dft(phi)) -
                                             inner_product(psi, phi)));
        }
    }
    s.check("fourier", "F F^+ = F^+ F = I (q=1..10)", unitary, 1e-13);
    s.check("fourier", "F^2 delta_n = delta_{-n}", parity, 1e-12);
    s.check("fourier", "F^4 = I", fourth, 1e-12);
    s.check("fourier", "dual resolution of identity", dual, 1e-13);
    s.check("fourier", "<F^+ phi, psi> = <phi, F psi>", adjoint, 1e-13);
    s.check("fourier", "<F psi, F phi> = <psi, phi>", inner, 1e-12);
}

void operator_checks(Suite& s, std::mt19937_64& rng) {
    double similarity = 0.0, eigen_rate = 0.0, eigen_trend = 0.0, parseval = 0.0, imag = 0.0, spectrum = 0.0;
    for (int q = 1; q <= 10; ++q) {
        const Lattice l(q);
        const auto f = dft_matrices(l);
        const HermitianOperator r = rate_operator(l);
        const HermitianOperator t = trend_operator(l);
        similarity = std::max(similarity, max_abs(t.matrix() - f->adjoint * r.matrix() * f->forward));
        for (int n = -q; n <= q; ++n) {
            const StateVector d = delta_state(l, n);
            const StateVector dt = tilde_delta(l, n);
            eigen_rate = std::max(eigen_rate, (r.matrix() * d.amplitudes() - double(n) * d.amplitudes()).cwiseAbs().maxCoeff());
            eigen_trend = std::max(eigen_trend, (t.matrix() * dt.amplitudes() - double(n) * dt.amplitudes()).cwiseAbs().maxCoeff());
        }
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector psi = random_state(l, rng);
            const StateVector fpsi = apply_dft(psi);
            double direct = 0.0;
            for (int n = -q; n <= q; ++n) direct += n * std::norm(fpsi.amplitude(n));
            parseval = std::max(parseval, std::abs(expectation(t, psi) - direct));
            imag = std::max(imag, std::abs(psi.amplitudes().dot(t.matrix() * psi.amplitudes()).imag()));
        }
        const auto eig = jacobi_eigh(t.matrix());
        for (int i = 0; i < l.dim(); ++i) spectrum = std::max(spectrum, std::abs(eig.values[i] - (i - q)));
    }
    s.check("operators", "T = F^+ R F (q=1..10)", similarity, 1e-12);
    s.check("operators", "R delta_n = n delta_n", eigen_rate, 1e-12);
    s.check("operators", "T tilde_delta_n = n tilde_delta_n", eigen_trend, 1e-12);
    s.check("operators", "<T> = sum n |F[Psi](n)|^2", parseval, 1e-11);
    s.check("operators", "Im <Psi, T Psi> for Hermitian T", imag, 1e-10);
    s.check("operators", "spectrum(T) = {-q..q}", spectrum, 1e-10);
}

void theta_checks(Suite& s, std::mt19937_64& rng) {
    const double kappas[] = {0.2, 0.5, 1.0, 2.0, 5.0};
    const int qs[] = {1, 5, 10};
    double cov = 0.0, dual = 0.0, fixed = 0.0, eq27 = 0.0, poisson = 0.0, shape = 0.0;
    for (int q : qs) {
        const Lattice l(q);
        const int d = l.dim();
        for (double kappa : kappas) {
            const StateVector g = gamma_kappa(l, GaussianParams(kappa));
            const StateVector g_inv = gamma_kappa(l, GaussianParams(1.0 / kappa));
            cov = std::max(cov, (apply_dft(g).amplitudes() - g_inv.amplitudes() / std::sqrt(kappa)).cwiseAbs().maxCoeff());
            const StateVector u = upsilon_kappa(l, GaussianParams(kappa));
            dual = std::max(dual, max_diff(apply_dft(u), upsilon_kappa(l, GaussianParams(1.0 / kappa))));
            for (int n = -q; n <= q; ++n) {
                const Complex th = theta3(ThetaArgs(double(n) / d, Complex(0.0, 1.0 / (kappa * d))));
                eq27 = std::max(eq27, std::abs(g.amplitude(n) - th / std::sqrt(kappa * d)));
                // Evenness, positivity and a zero imaginary part.
                const double even = std::abs(g.amplitude(n) - g.amplitude(-n)) + std::abs(u.amplitude(n) - u.amplitude(-n));
                const double bad_sign = (g.amplitude(n).real() > 0.0 && u.amplitude(n).real() > 0.0) ? 0.0 : 1.0;
                shape = std::max({shape, even, bad_sign, std::abs(g.amplitude(n).imag())});
            }
            for (int k = -q; k <= q; ++k) {
                Complex rhs = 0.0;
                for (int n = -q; n <= q; ++n) {
                    const double angle = -2.0 * pi * static_cast<double>(((k * n) % d + d) % d) / d;
                    rhs += std::polar(1.0, angle) * theta3(ThetaArgs(double(n) / d, Complex(0.0, 1.0 / (kappa * d))));
                }
                rhs /= std::sqrt(kappa * d);
                const Complex lhs = theta3(ThetaArgs(double(k) / d, Complex(0.0, kappa / d)));
                poisson = std::max(poisson, std::abs(lhs - rhs));
            }
        }
        const StateVector u1 = upsilon_kappa(l, GaussianParams(1.0));
        fixed = std::max(fixed, max_diff(apply_dft(u1), u1));
    }

    double periodic = 0.0, modular = 0.0;
    std::uniform_real_distribution<double> unit(-1.0, 1.0), width(0.3, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const Complex z(unit(rng), 0.3 * unit(rng));
        const Complex tau(unit(rng), width(rng));
        periodic = std::max(periodic, std::abs(theta3(ThetaArgs(z + 1.0, tau)) - theta3(ThetaArgs(z, tau))));
        const double x = unit(rng);
        const double t = width(rng);
        const Complex lhs = theta3(ThetaArgs(x, Complex(0.0, t)));
        const Complex rhs = std::exp(-pi * x * x / t) / std::sqrt(t) *
                            theta3(ThetaArgs(Complex(x) / Complex(0.0, t), Complex(0.0, 1.0 / t)));
        modular = std::max(modular, std::abs(lhs - rhs));
    }
    s.check("theta", "F[gamma_k] = k^{-1/2} gamma_{1/k}", cov, 1e-12);
    s.check("theta", "F[Upsilon_k] = Upsilon_{1/k}", dual, 1e-12);
    s.check("theta", "F[Upsilon_1] = Upsilon_1", fixed, 1e-12);
    s.check("theta", "gamma_k(n) = (kd)^{-1/2} theta3(n/d, i/(kd))", eq27, 1e-12);
    s.check("theta", "discrete Poisson identity for theta3", poisson, 1e-10);
    s.check("theta", "theta3(z+1, tau) = theta3(z, tau)", periodic, 1e-10);
    s.check("theta", "theta3 modular identity", modular, 1e-10);
    s.check("theta", "gamma/Upsilon even, positive, real", shape, 0.0);
}

void propagator_checks(Suite& s) {
    SimulationConfig c = figures::fig2_config();
    c.t_end = 1800.0;
    c.snapshots = {0.0, 1800.0};

    double drift = 0.0, reversal = 0.0;
    for (Method m : {Method::strang, Method::magnus2}) {
        c.method = m;
        const Trajectory tr = evolve(c);
        drift = std::max(drift, tr.norm_drift);
        const StateVector back = propagate(tr.states.back().psi, c.t_end, -c.dt,
                                           static_cast<std::uint64_t>(c.t_end / c.dt), m, c);
        reversal = std::max(reversal, max_diff(back, tr.states.front().psi));
    }
    s.check("propagator", "norm drift (fig2, 1800 s, both methods)", drift, 1e-10);
    s.check("propagator", "time reversal returns the initial state", reversal, 1e-8);

    SimulationConfig free = c;
    free.beta = 0.0;
    double oracle = 0.0, parity = 0.0;
    for (Method m : {Method::strang, Method::magnus2}) {
        free.method = m;
        const Trajectory tr = evolve(free);
        const StateVector exact = exact_free_evolution(tr.states.front().psi, free.t_end, free.mu);
        oracle = std::max(oracle, max_diff(tr.states.back().psi, exact));
        const auto p = probabilities(tr.states.back().psi);
        for (int n = 0; n <= free.q; ++n) parity = std::max(parity, std::abs(p.at(n) - p.at(-n)));
    }
    s.check("propagator", "beta = 0 matches closed-form free evolution", oracle, 1e-9);
    s.check("propagator", "beta = 0 parity |Psi(n)|^2 = |Psi(-n)|^2", parity, 1e-10);

    // Cross-agreement over the whole published run, at dt and dt/2.
    auto method_gap = [](double dt) {
        SimulationConfig f = figures::fig2_config();
        f.dt = dt;
        f.method = Method::strang;
        const Trajectory ts = evolve(f);
        f.method = Method::magnus2;
        const Trajectory tm = evolve(f);
        double gap = 0.0;
        for (std::size_t i = 0; i < ts.states.size(); ++i) {
            const auto ps = probabilities(ts.states[i].psi);
            const auto pm = probabilities(tm.states[i].psi);
            for (int n = -f.q; n <= f.q; ++n) gap = std::max(gap, std::abs(ps.at(n) - pm.at(n)));
        }
        return gap;
    };
    const double gap1 = method_gap(1.0);
    const double gap_half = method_gap(0.5);
    s.check("propagator", "strang vs magnus2 |Psi|^2 at dt=1 (fig2 snapshots)", gap1, 1e-4);
    s.check("propagator", "|gap(dt=1)/gap(dt=0.5) - 4| (second order)", std::abs(gap1 / gap_half - 4.0), 0.8);

    c.method = Method::strang;
    const Trajectory a = evolve(c);
    const Trajectory b = evolve(c);
    double identical = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        if (a.states[i].psi.amplitudes() != b.states[i].psi.amplitudes()) identical = 1.0;
    }
    s.check("propagator", "identical config gives bit-identical trajectory", identical, 0.0);
}

void config_checks(Suite& s, std::mt19937_64& rng) {
    double mismatches = 0.0;
    std::uniform_real_distribution<double> u(0.01, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        SimulationConfig c;
        c.q = 1 + static_cast<int>(rng() % 30);
        c.kappa = u(rng);
        c.mu = u(rng);
        c.beta = u(rng) - 5.0;
        c.omega = u(rng) * 1e-3;
        c.dt = 0.5;
        c.t_end = 0.5 * static_cast<double>(rng() % 1000);
        c.snapshots = {0.0, c.t_end};
        if (c.t_end == 0.0) c.snapshots = {0.0};
        c.method = static_cast<Method>(rng() % 3);
        if (!(parse_config_json(emit_config_json(c)) == c)) mismatches += 1.0;
    }
    s.check("config", "parse(emit(config)) = config", mismatches, 0.0);
}

} // namespace

std::vector<CheckResult> run_invariant_checks() {
    std::vector<CheckResult> out;
    Suite suite(out);
    std::mt19937_64 rng(20240917);
    lattice_checks(suite, rng);
    fourier_checks(suite, rng);
    operator_checks(suite, rng);
    theta_checks(suite, rng);
    propagator_checks(suite);
    config_checks(suite, rng);
    return out;
}

} // namespace qlimit
