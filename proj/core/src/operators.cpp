#include "qlimit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qlimit/errors.hpp"
#include "qlimit/fourier.hpp"

namespace qlimit {

HermitianOperator::HermitianOperator(Lattice lattice, Eigen::MatrixXcd matrix)
    : lattice_(lattice), matrix_(std::move(matrix)) {
    if (matrix_.rows() != lattice_.dim() || matrix_.cols() != lattice_.dim()) {
        throw std::invalid_argument("operator dimension does not match lattice");
    }
    if (!matrix_.allFinite()) {
        throw std::invalid_argument("operator entries must be finite");
    }
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    const double defect = hermiticity_defect();
    if (defect > kHermitianTolerance * scale) {
        std::ostringstream msg;
        msg << "operator is not Hermitian: max |A - A^H| = " << defect;
        throw std::invalid_argument(msg.str());
    }
}

StateVector HermitianOperator::apply(const StateVector& psi) const {
    if (psi.lattice() != lattice_) {
        throw std::invalid_argument("operator and state live on different lattices");
    }
    return StateVector(lattice_, matrix_ * psi.amplitudes());
}

double HermitianOperator::hermiticity_defect() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

Eigen::VectorXd lattice_points(const Lattice& lattice) {
    return Eigen::VectorXd::LinSpaced(lattice.dim(), -lattice.q(), lattice.q());
}

// F^+ diag(values) F.
Eigen::MatrixXcd conjugate_by_dft(const Lattice& lattice, const Eigen::VectorXd& values) {
    const auto dft = dft_matrices(lattice);
    return dft->adjoint * values.cast<Complex>().asDiagonal() * dft->forward;
}

void require_positive_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("mu must be a positive finite number");
    }
}

} // namespace

HermitianOperator rate_operator(const Lattice& lattice) {
    Eigen::MatrixXcd m = lattice_points(lattice).cast<Complex>().asDiagonal();
    return HermitianOperator(lattice, std::move(m));
}

HermitianOperator trend_operator(const Lattice& lattice) {
    return HermitianOperator(lattice, conjugate_by_dft(lattice, lattice_points(lattice)));
}

HermitianOperator price_operator(const Lattice& lattice, double p0, double scale) {
    if (!(p0 > 0.0) || !std::isfinite(p0)) {
        throw std::invalid_argument("reference price p0 must be positive");
    }
    const Eigen::VectorXd diag = (p0 + p0 * scale * lattice_points(lattice).array()).matrix();
    Eigen::MatrixXcd m = diag.cast<Complex>().asDiagonal();
    return HermitianOperator(lattice, std::move(m));
}

HermitianOperator kinetic_operator(const Lattice& lattice, double mu) {
    require_positive_mu(mu);
    const Eigen::VectorXd n = lattice_points(lattice);
    const Eigen::VectorXd energies = (n.array().square() / (2.0 * mu)).matrix();
    return HermitianOperator(lattice, conjugate_by_dft(lattice, energies));
}

HermitianOperator diagonal_operator(const Lattice& lattice, std::span<const double> values) {
    if (values.size() != static_cast<std::size_t>(lattice.dim())) {
        throw std::invalid_argument("diagonal table length does not match lattice");
    }
    Eigen::VectorXcd diag(lattice.dim());
    for (Eigen::Index i = 0; i < diag.size(); ++i) diag[i] = values[static_cast<std::size_t>(i)];
    Eigen::MatrixXcd m = diag.asDiagonal();
    return HermitianOperator(lattice, std::move(m));
}

HermitianOperator hamiltonian_at(const Lattice& lattice, double t, double mu, double beta,
                                 double omega) {
    Eigen::MatrixXcd h = kinetic_operator(lattice, mu).matrix();
    const double coupling = beta * std::cos(omega * t);
    const Eigen::VectorXd n = lattice_points(lattice);
    for (Eigen::Index i = 0; i < n.size(); ++i) h(i, i) += coupling * n[i];
    return HermitianOperator(lattice, std::move(h));
}

HermitianOperator hamiltonian_with_potential(const Lattice& lattice, double mu,
                                             std::span<const double> potential) {
    if (potential.size() != static_cast<std::size_t>(lattice.dim())) {
        throw std::invalid_argument("potential table length does not match lattice");
    }
    Eigen::MatrixXcd h = kinetic_operator(lattice, mu).matrix();
    for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) += potential[static_cast<std::size_t>(i)];
    return HermitianOperator(lattice, std::move(h));
}

double expectation(const HermitianOperator& op, const StateVector& psi) {
    if (op.lattice() != psi.lattice()) {
        throw std::domain_error("operator and state live on different lattices");
    }
    if (!is_normalized(psi)) {
        std::ostringstream msg;
        msg << "expectation needs a normalized state; | ||psi|| - 1 | = "
            << std::abs(psi.norm() - 1.0);
        throw std::domain_error(msg.str());
    }
    const Complex raw = psi.amplitudes().dot(op.matrix() * psi.amplitudes());
    if (std::abs(raw.imag()) > 1e-8) {
        std::ostringstream msg;
        msg << "expectation value has imaginary part " << raw.imag();
        throw NumericalError(msg.str());
    }
    return raw.real();
}

} // namespace qlimit
