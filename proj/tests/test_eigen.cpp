#include <doctest.h>

#include <random>

#include "qlimit/errors.hpp"
#include "qlimit/hermitian_eigen.hpp"
#include "qlimit/operators.hpp"
#include "test_support.hpp"

using namespace qlimit;
using qlimit::testing::rng;

namespace {

Eigen::MatrixXcd random_hermitian(int n) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng()), g(rng())};
    return (a + a.adjoint()) / 2.0;
}

template <typename M>
double unitarity_defect(const M& v) {
    return (v.adjoint() * v - M::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("diagonal input converges immediately") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
    d.diagonal() << 3.0, -1.0, 2.0, 0.5;
    const auto e = jacobi_eigh(d);
    CHECK(e.values(0) == -1.0);
    CHECK(e.values(3) == 3.0);
    CHECK(e.sweeps <= 1);
}

TEST_CASE("property: random Hermitian matrices against a library solver") {
    for (int trial = 0; trial < 60; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 45)(rng());
        const Eigen::MatrixXcd h = random_hermitian(n);
        const auto e = jacobi_eigh(h);
        const Eigen::VectorXd oracle = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
        CHECK((e.values - oracle).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, h.norm()));
        CHECK(eigen_residual(h, e) <= 1e-10);
        CHECK(unitarity_defect(e.vectors) <= 1e-12);
        for (int i = 1; i < n; ++i) CHECK(e.values(i - 1) <= e.values(i));
    }
}

TEST_CASE("property: real symmetric path") {
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 60; ++trial) {
        const int n = std::uniform_int_distribution<int>(1, 45)(rng());
        Eigen::MatrixXd a(n, n);
        for (auto& x : a.reshaped()) x = g(rng());
        const Eigen::MatrixXd h = (a + a.transpose()) / 2.0;
        const auto e = jacobi_eigh(h);
        const Eigen::VectorXd oracle = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h).eigenvalues();
        CHECK((e.values - oracle).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, h.norm()));
        CHECK(eigen_residual(h, e) <= 1e-10);
        CHECK(unitarity_defect(e.vectors) <= 1e-12);
    }
}

TEST_CASE("degenerate spectrum") {
    // trend operator squared has every nonzero eigenvalue doubly degenerate
    const Lattice l(10);
    const Eigen::MatrixXcd k = kinetic_operator(l, 1.0).matrix();
    const auto e = jacobi_eigh(k);
    CHECK(eigen_residual(k, e) <= 1e-10);
    CHECK(std::abs(e.values(0)) <= 1e-12);
    CHECK(e.values(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.values(2) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.values(20) == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("warm start from a nearby matrix") {
    const Lattice l(10);
    const Eigen::MatrixXcd h0 = hamiltonian_at(l, 0.0, 1.0, 0.1, 1.0 / 5000.0).matrix();
    const Eigen::MatrixXcd h1 = hamiltonian_at(l, 1.0, 1.0, 0.1, 1.0 / 5000.0).matrix();
    const auto cold = jacobi_eigh(h1);
    const auto warm = jacobi_eigh(h1, jacobi_eigh(h0).vectors);
    CHECK(warm.sweeps <= cold.sweeps);
    CHECK(eigen_residual(h1, warm) <= 1e-10);
    CHECK((warm.values - cold.values).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("non-convergence is reported") {
    const Eigen::MatrixXcd h = random_hermitian(20);
    JacobiOptions opts;
    opts.max_sweeps = 1;
    CHECK_THROWS_AS(jacobi_eigh(h, opts), NumericalError);
}
