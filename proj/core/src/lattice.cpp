#include "qlimit/lattice.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qlimit {

Lattice::Lattice(int q) : q_(q) {
    if (q < 1) {
        throw std::invalid_argument("lattice needs q >= 1, got q = " + std::to_string(q));
    }
}

std::size_t Lattice::index(int n) const {
    if (!contains(n)) {
        throw std::out_of_range("lattice point " + std::to_string(n) + " outside [-" +
                                std::to_string(q_) + ", " + std::to_string(q_) + "]");
    }
    return static_cast<std::size_t>(n + q_);
}

Lattice new_lattice(int q) { return Lattice(q); }

StateVector::StateVector(Lattice lattice, Eigen::VectorXcd amplitudes)
    : lattice_(lattice), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != lattice_.dim()) {
        throw std::invalid_argument("state has " + std::to_string(amplitudes_.size()) +
                                    " amplitudes, lattice has " + std::to_string(lattice_.dim()) +
                                    " points");
    }
    if (!amplitudes_.allFinite()) {
        throw std::invalid_argument("state amplitudes must be finite");
    }
}

ProbabilityDistribution::ProbabilityDistribution(Lattice lattice, std::vector<double> probs)
    : lattice_(lattice), probs_(std::move(probs)) {
    if (probs_.size() != static_cast<std::size_t>(lattice_.dim())) {
        throw std::invalid_argument("probability vector length does not match lattice");
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw std::invalid_argument("probabilities must be non-negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("probabilities must sum to one");
    }
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.lattice() != b.lattice()) {
        throw std::invalid_argument("inner product of states on different lattices");
    }
    // Eigen's dot() conjugates the first argument.
    return a.amplitudes().dot(b.amplitudes());
}

StateVector normalize(const StateVector& psi) {
    const double n = psi.norm();
    if (!(n >= kZeroNormFloor)) {
        throw std::domain_error("cannot normalize a zero state");
    }
    return StateVector(psi.lattice(), psi.amplitudes() / n);
}

StateVector delta_state(const Lattice& lattice, int n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(lattice.dim());
    v[static_cast<Eigen::Index>(lattice.index(n))] = 1.0;
    return StateVector(lattice, std::move(v));
}

StateVector zero_state(const Lattice& lattice) {
    return StateVector(lattice, Eigen::VectorXcd::Zero(lattice.dim()));
}

bool is_normalized(const StateVector& psi, double tolerance) {
    return std::abs(psi.norm() - 1.0) <= tolerance;
}

ProbabilityDistribution probabilities(const StateVector& psi) {
    const double defect = std::abs(psi.norm() - 1.0);
    if (!(defect <= kNormalizedTolerance)) {
        std::ostringstream msg;
        msg << "probabilities need a normalized state; | ||psi|| - 1 | = " << defect;
        throw std::domain_error(msg.str());
    }
    const auto& amps = psi.amplitudes();
    std::vector<double> p(static_cast<std::size_t>(amps.size()));
    for (Eigen::Index i = 0; i < amps.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(amps[i]);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= total;
    return ProbabilityDistribution(psi.lattice(), std::move(p));
}

} // namespace qlimit
