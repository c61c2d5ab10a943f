#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qlimit/errors.hpp"
#include "qlimit/fourier.hpp"
#include "qlimit/operators.hpp"
#include "qlimit/theta.hpp"
#include "test_support.hpp"

using namespace qlimit;
using qlimit::testing::max_abs_diff;
using qlimit::testing::random_q;
using qlimit::testing::random_unit_state;

namespace {

Eigen::VectorXd spectrum(const HermitianOperator& a) {
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a.matrix(), Eigen::EigenvaluesOnly).eigenvalues();
}

Eigen::VectorXd range(int q) {
    Eigen::VectorXd v(2 * q + 1);
    for (int n = -q; n <= q; ++n) v[n + q] = n;
    return v;
}

} // namespace

TEST_CASE("rate operator") {
    const Lattice l(10);
    const auto r = rate_operator(l);
    CHECK(max_abs_diff(r.apply(delta_state(l, 3)).amplitudes(), 3.0 * delta_state(l, 3).amplitudes()) == 0.0);
    CHECK(r.apply(delta_state(l, 0)).norm() == 0.0);
    CHECK(std::abs(r.matrix().trace()) == 0.0);
    for (int k = -10; k <= 10; ++k)
        for (int n = -10; n <= 10; ++n) CHECK(r.at(k, n) == Complex(k == n ? n : 0.0, 0.0));
}

TEST_CASE("trend operator") {
    const Lattice l(10);
    const auto t = trend_operator(l);
    const auto v4 = tilde_delta(l, 4);
    CHECK(max_abs_diff(t.apply(v4).amplitudes(), 4.0 * v4.amplitudes()) <= 1e-12);
    CHECK(t.apply(tilde_delta(l, 0)).norm() <= 1e-12);
    CHECK(max_abs_diff(Eigen::VectorXcd(spectrum(t).cast<Complex>()), Eigen::VectorXcd(range(10).cast<Complex>())) <=
          1e-10);
    CHECK(t.hermiticity_defect() <= 1e-12);
}

TEST_CASE("price operator") {
    const Lattice l(10);
    const auto literal = price_operator(l, 100.0);
    CHECK(max_abs_diff(literal.apply(delta_state(l, 2)).amplitudes(), 300.0 * delta_state(l, 2).amplitudes()) ==
          0.0);
    const auto percent = price_operator(l, 100.0, 0.01);
    CHECK(max_abs_diff(percent.apply(delta_state(l, 2)).amplitudes(), 102.0 * delta_state(l, 2).amplitudes()) <=
          1e-12);
    CHECK(max_abs_diff(literal.apply(delta_state(l, 0)).amplitudes(), 100.0 * delta_state(l, 0).amplitudes()) ==
          0.0);
    CHECK_THROWS_AS(price_operator(l, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(price_operator(l, -5.0), std::invalid_argument);
}

TEST_CASE("kinetic operator") {
    const Lattice l(10);
    const auto k = kinetic_operator(l, 1.0);
    CHECK(k.apply(tilde_delta(l, 0)).norm() <= 1e-12);
    const auto v3 = tilde_delta(l, 3);
    CHECK(max_abs_diff(k.apply(v3).amplitudes(), 4.5 * v3.amplitudes()) <= 1e-12);
    const auto ev = spectrum(k);
    CHECK(std::abs(ev.minCoeff()) <= 1e-12);
    CHECK(ev.minCoeff() >= -1e-12);
    CHECK_THROWS_AS(kinetic_operator(l, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(kinetic_operator(l, -1.0), std::invalid_argument);

    // squaring in the Fourier basis agrees with T*T/(2 mu)
    const Eigen::MatrixXcd tt = trend_operator(l).matrix() * trend_operator(l).matrix() / (2.0 * 2.5);
    CHECK(max_abs_diff(kinetic_operator(l, 2.5).matrix(), tt) <= 1e-11);
    // and it is real
    CHECK(kinetic_operator(l, 1.0).matrix().imag().cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("hamiltonian") {
    const Lattice l(10);
    const double mu = 1.0, beta = 0.1, omega = 1.0 / 5000.0;
    const auto kin = kinetic_operator(l, mu);

    // cos(omega t) = 0: the potential vanishes up to cos rounding
    const auto h_quarter = hamiltonian_at(l, std::numbers::pi / (2.0 * omega), mu, beta, omega);
    CHECK(max_abs_diff(h_quarter.matrix(), kin.matrix()) <= 1e-15);

    const auto h0 = hamiltonian_at(l, 0.0, mu, beta, omega);
    CHECK((h0.at(10, 10) - kin.at(10, 10)).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h0.hermiticity_defect() <= 1e-12);

    for (double t : {0.0, 17.0, 1800.0, 28800.0}) {
        CHECK(max_abs_diff(hamiltonian_at(l, t, mu, 0.0, omega).matrix(), kin.matrix()) == 0.0);
    }
    CHECK_THROWS_AS(hamiltonian_at(l, 0.0, 0.0, beta, omega), std::invalid_argument);

    const std::vector<double> v(21, 0.25);
    const auto hv = hamiltonian_with_potential(l, mu, v);
    CHECK(max_abs_diff(hv.matrix(), kin.matrix() + 0.25 * Eigen::MatrixXcd::Identity(21, 21)) <= 1e-15);
    CHECK_THROWS_AS(hamiltonian_with_potential(l, mu, std::vector<double>(20, 0.0)), std::invalid_argument);
}

TEST_CASE("constructor rejects non-Hermitian or mis-sized matrices") {
    const Lattice l(2);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(5, 5);
    a(0, 1) = {0.0, 1.0};
    a(1, 0) = {0.0, 1.0};
    CHECK_THROWS_AS(HermitianOperator(l, a), std::invalid_argument);
    a(1, 0) = {0.0, -1.0};
    CHECK_NOTHROW(HermitianOperator(l, a));
    CHECK_THROWS_AS(HermitianOperator(l, Eigen::MatrixXcd::Zero(4, 4)), std::invalid_argument);
    a(2, 2) = {1.0, 1e-6};
    CHECK_THROWS_AS(HermitianOperator(l, a), std::invalid_argument);
}

TEST_CASE("expectation values") {
    const Lattice l(10);
    const auto r = rate_operator(l);
    const auto t = trend_operator(l);
    CHECK(expectation(r, delta_state(l, 5)) == 5.0);

    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(l.dim());
    w[l.index(-1)] = 1.0;
    w[l.index(1)] = 1.0;
    CHECK(std::abs(expectation(r, normalize(StateVector(l, w)))) <= 1e-15);

    for (int n = -10; n <= 10; ++n) CHECK(std::abs(expectation(t, delta_state(l, n))) <= 1e-12);

    Eigen::VectorXcd unnorm = Eigen::VectorXcd::Zero(l.dim());
    unnorm[0] = 2.0;
    CHECK_THROWS_AS(expectation(r, StateVector(l, unnorm)), std::domain_error);
    CHECK_THROWS_AS(expectation(rate_operator(Lattice(3)), delta_state(l, 0)), std::domain_error);
}

TEST_CASE("expectation flags a large imaginary part") {
    // Anti-Hermitian perturbation below the constructor threshold at large scale,
    // yet producing an imaginary mean above 1e-8.
    const Lattice l(1);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3);
    a(0, 0) = 1e6;
    a(0, 1) = {0.0, 4e-7};
    a(1, 0) = {0.0, 4e-7};
    const HermitianOperator op(l, a);
    Eigen::VectorXcd v(3);
    v << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(expectation(op, normalize(StateVector(l, v))), NumericalError);
}

TEST_CASE("similarity T = F^+ R F for q = 1..10") {
    for (int q = 1; q <= 10; ++q) {
        const Lattice l(q);
        Eigen::MatrixXcd f(l.dim(), l.dim());
        for (int k = -q; k <= q; ++k)
            for (int n = -q; n <= q; ++n)
                f(l.index(k), l.index(n)) =
                    std::polar(1.0 / std::sqrt(l.dim()), -2.0 * std::numbers::pi * k * n / l.dim());
        const Eigen::MatrixXcd oracle = f.adjoint() * range(q).cast<Complex>().asDiagonal() * f;
        CHECK(max_abs_diff(trend_operator(l).matrix(), oracle) <= 1e-12);
    }
}

TEST_CASE("eigen-relations for every n") {
    for (int q = 1; q <= 10; ++q) {
        const Lattice l(q);
        const auto r = rate_operator(l);
        const auto t = trend_operator(l);
        for (int n = -q; n <= q; ++n) {
            CHECK(max_abs_diff(r.apply(delta_state(l, n)).amplitudes(), n * delta_state(l, n).amplitudes()) <= 1e-12);
            const auto v = tilde_delta(l, n);
            CHECK(max_abs_diff(t.apply(v).amplitudes(), double(n) * v.amplitudes()) <= 1e-12);
        }
    }
}

TEST_CASE("property: Parseval form of <T> and reality of expectations") {
    for (int trial = 0; trial < 200; ++trial) {
        const Lattice l(random_q(1, 15));
        const auto psi = random_unit_state(l);
        const auto phi = apply_dft(psi);
        double parseval = 0.0;
        for (int n = -l.q(); n <= l.q(); ++n) parseval += n * std::norm(phi.amplitude(n));
        CHECK(std::abs(expectation(trend_operator(l), psi) - parseval) <= 1e-11);

        const Complex raw = psi.amplitudes().dot(trend_operator(l).matrix() * psi.amplitudes());
        CHECK(std::abs(raw.imag()) < 1e-10);
        const Complex raw_k = psi.amplitudes().dot(kinetic_operator(l, 0.7).matrix() * psi.amplitudes());
        CHECK(std::abs(raw_k.imag()) < 1e-10);
    }
}

TEST_CASE("spectrum of T equals spectrum of R") {
    for (int q = 1; q <= 10; ++q) {
        const Eigen::VectorXd ev = spectrum(trend_operator(Lattice(q)));
        CHECK((ev - range(q)).cwiseAbs().maxCoeff() <= 1e-10);
    }
}
