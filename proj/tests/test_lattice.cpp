#include <doctest.h>

#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qlimit/lattice.hpp"
#include "test_support.hpp"

using namespace qlimit;
using qlimit::testing::max_abs_diff;
using qlimit::testing::random_q;
using qlimit::testing::random_state;

TEST_CASE("lattice dimension is 2q+1") {
    CHECK(new_lattice(10).dim() == 21);
    CHECK(new_lattice(1).dim() == 3);
    CHECK(new_lattice(5).dim() == 11);
}

TEST_CASE("lattice rejects q < 1") {
    CHECK_THROWS_AS(new_lattice(0), std::invalid_argument);
    CHECK_THROWS_AS(new_lattice(-3), std::invalid_argument);
}

TEST_CASE("index is a bijection onto 0..d-1") {
    for (int q = 1; q <= 12; ++q) {
        const Lattice l(q);
        std::vector<int> seen(l.dim(), 0);
        for (int n = -q; n <= q; ++n) {
            const auto i = l.index(n);
            REQUIRE(i < static_cast<std::size_t>(l.dim()));
            ++seen[i];
            CHECK(l.point(i) == n);
        }
        for (int c : seen) CHECK(c == 1);
        CHECK_THROWS_AS(l.index(q + 1), std::out_of_range);
        CHECK_THROWS_AS(l.index(-q - 1), std::out_of_range);
    }
}

TEST_CASE("state vector checks length and finiteness") {
    const Lattice l(2);
    CHECK_THROWS_AS(StateVector(l, Eigen::VectorXcd::Zero(4)), std::invalid_argument);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
    v[1] = {std::nan(""), 0.0};
    CHECK_THROWS_AS(StateVector(l, v), std::invalid_argument);
    v[1] = {0.0, INFINITY};
    CHECK_THROWS_AS(StateVector(l, v), std::invalid_argument);
}

TEST_CASE("inner product on basis states") {
    const Lattice l(10);
    CHECK(inner_product(delta_state(l, 3), delta_state(l, 3)) == Complex(1.0, 0.0));
    CHECK(inner_product(delta_state(l, 3), delta_state(l, 5)) == Complex(0.0, 0.0));

    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(l.dim());
    a[l.index(0)] = {1.0, 1.0};
    CHECK(inner_product(StateVector(l, a), delta_state(l, 0)) == Complex(1.0, -1.0));
}

TEST_CASE("inner product rejects mismatched lattices") {
    CHECK_THROWS_AS(inner_product(delta_state(Lattice(2), 0), delta_state(Lattice(3), 0)),
                    std::invalid_argument);
}

TEST_CASE("normalize") {
    const Lattice l(10);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(l.dim());
    v[l.index(0)] = 2.0;
    CHECK(max_abs_diff(normalize(StateVector(l, v)), delta_state(l, 0)) == 0.0);

    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(l.dim());
    w[l.index(-1)] = 1.0;
    w[l.index(1)] = 1.0;
    const auto u = normalize(StateVector(l, w));
    CHECK(u.amplitude(-1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(u.amplitude(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(u.amplitude(0) == Complex(0.0, 0.0));

    CHECK_THROWS_AS(normalize(zero_state(l)), std::domain_error);
    Eigen::VectorXcd tiny = Eigen::VectorXcd::Zero(l.dim());
    tiny[0] = 1e-305;
    CHECK_THROWS_AS(normalize(StateVector(l, tiny)), std::domain_error);
}

TEST_CASE("delta states") {
    const Lattice l(10);
    const auto d0 = delta_state(l, 0);
    for (int n = -10; n <= 10; ++n) CHECK(d0.amplitude(n) == Complex(n == 0 ? 1.0 : 0.0, 0.0));
    CHECK(delta_state(l, -10).amplitudes()[0] == Complex(1.0, 0.0));
    CHECK_THROWS_AS(delta_state(l, 11), std::out_of_range);
}

TEST_CASE("probabilities") {
    const Lattice l(10);
    const auto p5 = probabilities(delta_state(l, 5));
    for (int n = -10; n <= 10; ++n) CHECK(p5.at(n) == (n == 5 ? 1.0 : 0.0));

    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(l.dim());
    w[l.index(-1)] = 1.0;
    w[l.index(1)] = 1.0;
    const auto p = probabilities(normalize(StateVector(l, w)));
    CHECK(p.at(-1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.at(1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("probabilities reject unnormalized states and report the defect") {
    const Lattice l(3);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(l.dim());
    v[0] = 1.5;
    try {
        (void)probabilities(StateVector(l, v));
        FAIL("expected domain_error");
    } catch (const std::domain_error& e) {
        CHECK(std::string(e.what()).find("0.5") != std::string::npos);
    }
    // Slightly off but inside the tolerance: accepted and renormalized.
    v[0] = 1.0 + 5e-11;
    const auto p = probabilities(StateVector(l, v));
    CHECK(p.at(-3) == 1.0);
}

TEST_CASE("probability distribution checks") {
    const Lattice l(1);
    CHECK_THROWS_AS(ProbabilityDistribution(l, {0.5, 0.6, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityDistribution(l, {0.5, 0.5, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(ProbabilityDistribution(l, {0.5, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(ProbabilityDistribution(l, {0.25, 0.5, 0.25}));
}

// ---- properties over random inputs ----

TEST_CASE("property: Cauchy-Schwarz") {
    for (int trial = 0; trial < 300; ++trial) {
        const Lattice l(random_q());
        const auto a = random_state(l);
        const auto b = random_state(l);
        const double lhs = std::norm(inner_product(a, b));
        const double rhs = std::real(inner_product(a, a)) * std::real(inner_product(b, b));
        CHECK(lhs <= rhs * (1.0 + 1e-14));
    }
}

TEST_CASE("property: basis expansion reconstructs psi exactly") {
    for (int trial = 0; trial < 100; ++trial) {
        const Lattice l(random_q());
        const auto psi = random_state(l);
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(l.dim());
        for (int n = -l.q(); n <= l.q(); ++n) sum += psi.amplitude(n) * delta_state(l, n).amplitudes();
        CHECK(max_abs_diff(sum, psi.amplitudes()) == 0.0);
    }
}

TEST_CASE("property: resolution of identity") {
    for (int trial = 0; trial < 100; ++trial) {
        const Lattice l(random_q());
        const auto psi = random_state(l);
        Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(l.dim());
        for (int n = -l.q(); n <= l.q(); ++n) {
            const auto dn = delta_state(l, n);
            sum += inner_product(dn, psi) * dn.amplitudes();
        }
        CHECK(max_abs_diff(sum, psi.amplitudes()) <= 1e-15);
    }
}

TEST_CASE("property: normalize is idempotent and parallel") {
    for (int trial = 0; trial < 200; ++trial) {
        const Lattice l(random_q());
        const auto psi = random_state(l);
        const auto once = normalize(psi);
        CHECK(std::abs(std::real(inner_product(once, once)) - 1.0) <= 1e-14);
        CHECK(max_abs_diff(normalize(once), once) <= 1e-14);
        // parallel: |<once, psi>| = ||psi||
        CHECK(std::abs(inner_product(once, psi)) == doctest::Approx(psi.norm()).epsilon(1e-13));
    }
}

TEST_CASE("property: probabilities of random unit states sum to one") {
    for (int trial = 0; trial < 200; ++trial) {
        const Lattice l(random_q());
        const auto p = probabilities(qlimit::testing::random_unit_state(l));
        double s = 0.0;
        for (double x : p.values()) {
            CHECK(x >= 0.0);
            s += x;
        }
        CHECK(std::abs(s - 1.0) <= 1e-12);
    }
}

TEST_CASE("states are safe to share across threads") {
    const Lattice l(10);
    const auto psi = qlimit::testing::random_unit_state(l);
    std::vector<double> out(4);
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i) {
        threads.emplace_back([&, i] { out[i] = probabilities(psi).at(0); });
    }
    for (auto& t : threads) t.join();
    for (double x : out) CHECK(x == out[0]);
}
