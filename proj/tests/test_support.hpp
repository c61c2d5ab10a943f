// Shared generators and comparisons for the unit tests.
#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qlimit/lattice.hpp"

namespace qlimit::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0x5eed1234ULL);
    return engine;
}

/// Gaussian complex vector on the lattice; not normalized.
inline StateVector random_state(const Lattice& l) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(l.dim());
    for (auto& z : v) z = {g(rng()), g(rng())};
    return StateVector(l, v);
}

inline StateVector random_unit_state(const Lattice& l) { return normalize(random_state(l)); }

inline int random_q(int lo = 1, int hi = 12) {
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline double max_abs_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const StateVector& a, const StateVector& b) {
    return max_abs_diff(a.amplitudes(), b.amplitudes());
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qlimit::testing
