#pragma once

#include "qlimit/lattice.hpp"

namespace qlimit {

/// Width parameter of the discrete Gaussian; strictly positive.
class GaussianParams {
public:
    /// Throws std::invalid_argument unless kappa is finite and > 0.
    explicit GaussianParams(double kappa);
    double kappa() const noexcept { return kappa_; }

private:
    double kappa_;
};

/// Arguments (z, tau) of theta_3 with Im(tau) > 0.
class ThetaArgs {
public:
    /// Throws std::domain_error when Im(tau) <= 0.
    ThetaArgs(Complex z, Complex tau);
    Complex z() const noexcept { return z_; }
    Complex tau() const noexcept { return tau_; }

private:
    Complex z_;
    Complex tau_;
};

/// Jacobi theta_3(z, tau) = sum_a exp(i pi tau a^2) exp(2 pi i a z).
///
/// The sum runs over the window of a around the largest term -Im(z)/Im(tau) outside
/// of which every term, and the Gaussian tail they form, is below tol times the
/// largest term. Requires 0 < tol <= 1e-6 (std::invalid_argument otherwise).
Complex theta3(const ThetaArgs& args, double tol = 1e-16);

/// gamma_kappa(n) = sum_m exp(-(kappa pi / d) (m d + n)^2), summed in real arithmetic
/// outward from m = 0 until the next term is below 1e-18 of the running sum.
/// Entries whose every image underflows (kappa pi q^2 / d beyond ~745) come out as 0.
StateVector gamma_kappa(const Lattice& lattice, const GaussianParams& params);

/// gamma_kappa / ||gamma_kappa||.
StateVector upsilon_kappa(const Lattice& lattice, const GaussianParams& params);

} // namespace qlimit
