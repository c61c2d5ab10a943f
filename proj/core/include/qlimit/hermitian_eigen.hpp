#pragma once

#include <Eigen/Dense>

namespace qlimit {

/// Eigenpairs of a Hermitian matrix: H V = V diag(values), values ascending.
template <typename Matrix>
struct Eigensystem {
    Eigen::VectorXd values;
    Matrix vectors;
    int sweeps = 0;
};

using HermitianEigensystem = Eigensystem<Eigen::MatrixXcd>;
using SymmetricEigensystem = Eigensystem<Eigen::MatrixXd>;

struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm is below tolerance * ||H||_F.
    double tolerance = 1e-14;
    int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for small dense Hermitian matrices. Only the upper
/// triangle's Hermitian structure is assumed, not checked.
/// Throws NumericalError if it fails to converge within max_sweeps.
HermitianEigensystem jacobi_eigh(const Eigen::MatrixXcd& h, const JacobiOptions& options = {});

/// Same, starting from a unitary guess for the eigenvectors (e.g. those of a nearby
/// matrix). Converges in one or two sweeps when the guess is good.
HermitianEigensystem jacobi_eigh(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& guess,
                                 const JacobiOptions& options = {});

/// Real symmetric variants.
SymmetricEigensystem jacobi_eigh(const Eigen::MatrixXd& h, const JacobiOptions& options = {});
SymmetricEigensystem jacobi_eigh(const Eigen::MatrixXd& h, const Eigen::MatrixXd& guess,
                                 const JacobiOptions& options = {});

/// ||H V - V diag(values)||_F.
double eigen_residual(const Eigen::MatrixXcd& h, const HermitianEigensystem& eig);
double eigen_residual(const Eigen::MatrixXd& h, const SymmetricEigensystem& eig);

} // namespace qlimit
