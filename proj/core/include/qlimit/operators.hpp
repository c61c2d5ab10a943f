#pragma once

#include <span>

#include <Eigen/Dense>

#include "qlimit/lattice.hpp"

namespace qlimit {

/// Dense Hermitian matrix on a lattice, indexed by (k + q, n + q).
class HermitianOperator {
public:
    /// Relative entrywise tolerance used by the constructor's Hermiticity check.
    static constexpr double kHermitianTolerance = 1e-12;

    /// Throws std::invalid_argument when the matrix is not d x d or not Hermitian
    /// within kHermitianTolerance * max(1, max|A|).
    HermitianOperator(Lattice lattice, Eigen::MatrixXcd matrix);

    const Lattice& lattice() const noexcept { return lattice_; }
    const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

    /// A(k, n) addressed by lattice points.
    Complex at(int k, int n) const {
        return matrix_(static_cast<Eigen::Index>(lattice_.index(k)),
                       static_cast<Eigen::Index>(lattice_.index(n)));
    }

    StateVector apply(const StateVector& psi) const;

    /// max |A - A^H| entrywise.
    double hermiticity_defect() const;

private:
    Lattice lattice_;
    Eigen::MatrixXcd matrix_;
};

/// R = sum_n n |delta_n><delta_n|.
HermitianOperator rate_operator(const Lattice& lattice);

/// T = F^+ R F.
HermitianOperator trend_operator(const Lattice& lattice);

/// p0 I + p0 * scale * R. scale = 1 is the literal form; scale = 0.01 reads n as a
/// percentage. Throws std::invalid_argument for p0 <= 0.
HermitianOperator price_operator(const Lattice& lattice, double p0, double scale = 1.0);

/// T^2 / (2 mu), assembled as F^+ diag(n^2 / 2mu) F. Throws std::invalid_argument for mu <= 0.
HermitianOperator kinetic_operator(const Lattice& lattice, double mu);

/// Diagonal operator with the given values along n = -q..q.
HermitianOperator diagonal_operator(const Lattice& lattice, std::span<const double> values);

/// Market Hamiltonian T^2/(2 mu) + beta cos(omega t) R.
HermitianOperator hamiltonian_at(const Lattice& lattice, double t, double mu, double beta,
                                 double omega);

/// T^2/(2 mu) + V with V a user-supplied diagonal potential table over n = -q..q.
HermitianOperator hamiltonian_with_potential(const Lattice& lattice, double mu,
                                             std::span<const double> potential);

/// <Psi, A Psi> for a normalized state.
///
/// Throws std::domain_error for an unnormalized state or mismatched lattice, and
/// NumericalError when the raw imaginary part exceeds 1e-8.
double expectation(const HermitianOperator& op, const StateVector& psi);

} // namespace qlimit
