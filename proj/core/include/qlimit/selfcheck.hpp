#pragma once

#include <string>
#include <vector>

namespace qlimit {

/// Outcome of one invariant: passed iff measured <= tolerance.
struct CheckResult {
    std::string module;
    std::string name;
    double measured;
    double tolerance;
    bool passed;
};

/// Runs the invariant suites of every module (lattice, fourier, operators,
/// theta-gaussian, propagator, config) with a fixed random seed. Takes a few seconds.
std::vector<CheckResult> run_invariant_checks();

} // namespace qlimit
