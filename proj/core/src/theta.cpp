#include "qlimit/theta.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qlimit {

using std::numbers::pi;

GaussianParams::GaussianParams(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw std::invalid_argument("kappa must be a positive finite number");
    }
}

ThetaArgs::ThetaArgs(Complex z, Complex tau) : z_(z), tau_(tau) {
    if (!(tau.imag() > 0.0)) {
        throw std::domain_error("theta3 needs Im(tau) > 0");
    }
}

Complex theta3(const ThetaArgs& args, double tol) {
    if (!(tol > 0.0 && tol <= 1e-6)) {
        throw std::invalid_argument("theta3 tolerance must lie in (0, 1e-6]");
    }
    const Complex z = args.z();
    const Complex tau = args.tau();
    const double b = tau.imag();
    const double c = z.imag();

    // |term(a)| = exp(-pi b (a + c/b)^2 + pi c^2 / b). Past a half-width w from the
    // peak, terms drop below tol * e^{-5}; the extra log accounts for the tail being
    // a sum of up to ~1/(pi b) comparable terms when b is small.
    const double centre = -c / b;
    const double budget = -std::log(tol) + 5.0 + std::max(0.0, std::log(1.0 / (pi * b)));
    const double half_width = std::sqrt(budget / (pi * b)) + 1.0;
    const auto lo = static_cast<long long>(std::floor(centre - half_width));
    const auto hi = static_cast<long long>(std::ceil(centre + half_width));

    const Complex i_pi(0.0, pi);
    Complex sum = 0.0;
    for (long long a = lo; a <= hi; ++a) {
        const auto x = static_cast<double>(a);
        sum += std::exp(i_pi * tau * (x * x) + 2.0 * i_pi * x * z);
    }
    return sum;
}

StateVector gamma_kappa(const Lattice& lattice, const GaussianParams& params) {
    const int d = lattice.dim();
    const double rate = params.kappa() * pi / d;
    auto term = [&](long long m, int n) {
        const double x = static_cast<double>(m * d + n);
        return std::exp(-rate * x * x);
    };

    Eigen::VectorXcd values(d);
    for (int i = 0; i < d; ++i) {
        const int n = lattice.point(static_cast<std::size_t>(i));
        // |m d + n| grows monotonically in |m| for m != 0 because |n| < d/2.
        double sum = term(0, n);
        for (long long m = 1;; ++m) {
            const double up = term(m, n);
            const double down = term(-m, n);
            sum += up + down;
            if (std::max(up, down) <= 1e-18 * sum) break;  // <= also ends an all-underflow sum
        }
        values[i] = sum;
    }
    return StateVector(lattice, std::move(values));
}

StateVector upsilon_kappa(const Lattice& lattice, const GaussianParams& params) {
    return normalize(gamma_kappa(lattice, params));
}

} // namespace qlimit
