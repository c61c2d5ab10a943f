#include "qlimit/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlimit/errors.hpp"

namespace qlimit {

namespace {

using Complex = std::complex<double>;

double conj(double x) { return x; }
Complex conj(Complex x) { return std::conj(x); }
double real(double x) { return x; }
double real(Complex x) { return x.real(); }
double abs2(double x) { return x * x; }
double abs2(Complex x) { return std::norm(x); }

template <typename M>
double off_diagonal_norm(const M& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) s += abs2(a(i, j));
        }
    }
    return std::sqrt(s);
}

// Zeroes a(p, q) with the unitary G = D R, where D = diag(.., conj(w) at q, ..) makes
// the pivot real and R is a real plane rotation. Applies A <- G^H A G and V <- V G.
// Only columns p and q are rotated; rows p and q follow from Hermiticity and the
// 2x2 pivot block is set analytically.
template <typename M>
void rotate(M& a, M& v, Eigen::Index p, Eigen::Index q) {
    using Scalar = typename M::Scalar;
    const Scalar apq = a(p, q);
    const double mag = std::abs(apq);
    const Scalar w = apq / mag;
    const Scalar wc = conj(w);
    const double app = real(a(p, p));
    const double aqq = real(a(q, q));

    const double theta = (aqq - app) / (2.0 * mag);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const Eigen::Index n = a.rows();

    Scalar* ap = a.col(p).data();
    Scalar* aq = a.col(q).data();
    for (Eigen::Index r = 0; r < n; ++r) {
        const Scalar x = ap[r];
        const Scalar y = aq[r] * wc;
        ap[r] = c * x - s * y;
        aq[r] = s * x + c * y;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
        a(p, r) = conj(ap[r]);
        a(q, r) = conj(aq[r]);
    }
    a(p, p) = app - t * mag;
    a(q, q) = aqq + t * mag;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    Scalar* vp = v.col(p).data();
    Scalar* vq = v.col(q).data();
    for (Eigen::Index r = 0; r < n; ++r) {
        const Scalar x = vp[r];
        const Scalar y = vq[r] * wc;
        vp[r] = c * x - s * y;
        vq[r] = s * x + c * y;
    }
}

template <typename M>
Eigensystem<M> solve(M a, M v, double scale, const JacobiOptions& options) {
    const Eigen::Index n = a.rows();
    const double target = options.tolerance * std::max(scale, 1e-300);
    // Skipping pivots below target / n cannot leave an off-diagonal norm above target.
    const double skip = std::max(target / static_cast<double>(std::max<Eigen::Index>(n, 1)), 1e-300);

    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (sweep == options.max_sweeps) {
            throw NumericalError("Jacobi eigensolver did not converge in " +
                                 std::to_string(options.max_sweeps) + " sweeps");
        }
        ++sweep;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > skip) rotate(a, v, p, q);
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return real(a(i, i)) < real(a(j, j));
    });

    Eigensystem<M> out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        out.values[k] = real(a(src, src));
        out.vectors.col(k) = v.col(src);
    }
    out.sweeps = sweep;
    return out;
}

template <typename M>
void require_square(const M& h) {
    if (h.rows() != h.cols()) throw std::invalid_argument("eigensolver needs a square matrix");
    if (!h.allFinite()) throw NumericalError("eigensolver input has non-finite entries");
}

template <typename M>
Eigensystem<M> cold_start(const M& h, const JacobiOptions& options) {
    require_square(h);
    return solve<M>(h, M::Identity(h.rows(), h.cols()), h.norm(), options);
}

template <typename M>
Eigensystem<M> warm_start(const M& h, const M& guess, const JacobiOptions& options) {
    require_square(h);
    if (guess.rows() != h.rows() || guess.cols() != h.cols()) {
        throw std::invalid_argument("eigenvector guess has the wrong shape");
    }
    M a = guess.adjoint() * h * guess;
    return solve<M>(std::move(a), guess, h.norm(), options);
}

template <typename M>
double residual(const M& h, const Eigensystem<M>& eig) {
    using Scalar = typename M::Scalar;
    return (h * eig.vectors - eig.vectors * eig.values.template cast<Scalar>().asDiagonal()).norm();
}

} // namespace

HermitianEigensystem jacobi_eigh(const Eigen::MatrixXcd& h, const JacobiOptions& options) {
    return cold_start(h, options);
}

HermitianEigensystem jacobi_eigh(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& guess,
                                 const JacobiOptions& options) {
    return warm_start(h, guess, options);
}

SymmetricEigensystem jacobi_eigh(const Eigen::MatrixXd& h, const JacobiOptions& options) {
    return cold_start(h, options);
}

SymmetricEigensystem jacobi_eigh(const Eigen::MatrixXd& h, const Eigen::MatrixXd& guess,
                                 const JacobiOptions& options) {
    return warm_start(h, guess, options);
}

double eigen_residual(const Eigen::MatrixXcd& h, const HermitianEigensystem& eig) {
    return residual(h, eig);
}

double eigen_residual(const Eigen::MatrixXd& h, const SymmetricEigensystem& eig) {
    return residual(h, eig);
}

} // namespace qlimit
