#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qlimit {

using Complex = std::complex<double>;

/// Vectors with norm below this are treated as zero by normalize().
inline constexpr double kZeroNormFloor = 1e-300;
/// Tolerance on | ||psi|| - 1 | for states that must be normalized.
inline constexpr double kNormalizedTolerance = 1e-10;

/// The return lattice {-q, ..., q}; d = 2q + 1 points, stored in ascending order.
class Lattice {
public:
    /// Throws std::invalid_argument for q < 1.
    explicit Lattice(int q);

    int q() const noexcept { return q_; }
    int dim() const noexcept { return 2 * q_ + 1; }

    bool contains(int n) const noexcept { return n >= -q_ && n <= q_; }

    /// Storage index n + q. Throws std::out_of_range when n is not a lattice point.
    std::size_t index(int n) const;
    /// Inverse of index(): lattice point stored at position i.
    int point(std::size_t i) const noexcept { return static_cast<int>(i) - q_; }

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    int q_;
};

Lattice new_lattice(int q);

/// Complex amplitudes psi(n), n = -q..q. Immutable once built.
class StateVector {
public:
    /// Throws std::invalid_argument on length mismatch or non-finite entries.
    StateVector(Lattice lattice, Eigen::VectorXcd amplitudes);

    const Lattice& lattice() const noexcept { return lattice_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }

    /// psi(n) for a lattice point n.
    Complex amplitude(int n) const { return amplitudes_[static_cast<Eigen::Index>(lattice_.index(n))]; }

    double norm() const { return amplitudes_.norm(); }

private:
    Lattice lattice_;
    Eigen::VectorXcd amplitudes_;
};

/// p(n) = |Psi(n)|^2 over the lattice.
class ProbabilityDistribution {
public:
    /// Throws std::invalid_argument if any entry is negative or the total is not 1 within 1e-12.
    ProbabilityDistribution(Lattice lattice, std::vector<double> probs);

    const Lattice& lattice() const noexcept { return lattice_; }
    std::span<const double> values() const noexcept { return probs_; }
    double at(int n) const { return probs_[lattice_.index(n)]; }

private:
    Lattice lattice_;
    std::vector<double> probs_;
};

/// sum_n conj(a(n)) b(n). Throws std::invalid_argument when the lattices differ.
Complex inner_product(const StateVector& a, const StateVector& b);

/// psi / ||psi||. Throws std::domain_error when ||psi|| < kZeroNormFloor.
StateVector normalize(const StateVector& psi);

/// Point mass at n. Throws std::out_of_range for n outside the lattice.
StateVector delta_state(const Lattice& lattice, int n);

/// All-zero state on the lattice.
StateVector zero_state(const Lattice& lattice);

/// Born probabilities of a normalized state.
///
/// Throws std::domain_error when | ||psi|| - 1 | > kNormalizedTolerance; the message
/// reports the defect. The returned values are divided by their sum so they total
/// one to rounding.
ProbabilityDistribution probabilities(const StateVector& psi);

/// Checks | ||psi|| - 1 | <= tolerance.
bool is_normalized(const StateVector& psi, double tolerance = kNormalizedTolerance);

} // namespace qlimit
