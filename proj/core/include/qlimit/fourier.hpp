#pragma once

#include <memory>

#include <Eigen/Dense>

#include "qlimit/lattice.hpp"

namespace qlimit {

/// Centered finite Fourier transform on the lattice and its adjoint.
///
///   forward[k, n] = d^{-1/2} exp(-2 pi i k n / d),   k, n in {-q, ..., q}
///   adjoint       = forward^H (built by conjugate transpose, so exact)
///
/// Row/column i of either matrix corresponds to lattice point i - q.
struct DftMatrices {
    Lattice lattice;
    Eigen::MatrixXcd forward;
    Eigen::MatrixXcd adjoint;
};

/// Builds the matrices for a lattice. Results are cached per q and shared;
/// the cache is thread-safe and entries are never mutated.
std::shared_ptr<const DftMatrices> dft_matrices(const Lattice& lattice);

StateVector apply_dft(const StateVector& psi);
StateVector apply_inverse_dft(const StateVector& phi);

/// Dual basis vector F^+ delta_n, i.e. k -> d^{-1/2} exp(2 pi i k n / d).
StateVector tilde_delta(const Lattice& lattice, int n);

} // namespace qlimit
