#include "qlimit/fourier.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace qlimit {

namespace {

// exp(-2 pi i k n / d) / sqrt(d), with k n reduced modulo d in exact integer
// arithmetic before the angle is formed.
Complex kernel(long long k, long long n, long long d) {
    long long r = (k * n) % d;
    if (r < 0) r += d;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d);
    return std::polar(1.0 / std::sqrt(static_cast<double>(d)), angle);
}

std::shared_ptr<const DftMatrices> build(const Lattice& lattice) {
    const int d = lattice.dim();
    Eigen::MatrixXcd f(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            f(i, j) = kernel(lattice.point(static_cast<std::size_t>(i)),
                             lattice.point(static_cast<std::size_t>(j)), d);
        }
    }
    Eigen::MatrixXcd fa = f.adjoint();
    return std::make_shared<const DftMatrices>(DftMatrices{lattice, std::move(f), std::move(fa)});
}

} // namespace

std::shared_ptr<const DftMatrices> dft_matrices(const Lattice& lattice) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const DftMatrices>> cache;

    std::lock_guard lock(mutex);
    auto& slot = cache[lattice.q()];
    if (!slot) slot = build(lattice);
    return slot;
}

StateVector apply_dft(const StateVector& psi) {
    const auto m = dft_matrices(psi.lattice());
    return StateVector(psi.lattice(), m->forward * psi.amplitudes());
}

StateVector apply_inverse_dft(const StateVector& phi) {
    const auto m = dft_matrices(phi.lattice());
    return StateVector(phi.lattice(), m->adjoint * phi.amplitudes());
}

StateVector tilde_delta(const Lattice& lattice, int n) {
    const auto m = dft_matrices(lattice);
    const auto col = static_cast<Eigen::Index>(lattice.index(n));
    return StateVector(lattice, m->adjoint.col(col));
}

} // namespace qlimit
