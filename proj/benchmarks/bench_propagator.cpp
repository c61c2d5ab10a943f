// Micro benchmarks for the per-step cost of the integrators and their building blocks.

#include <benchmark/benchmark.h>

#include "qlimit/figures.hpp"
#include "qlimit/fourier.hpp"
#include "qlimit/hermitian_eigen.hpp"
#include "qlimit/operators.hpp"
#include "qlimit/propagator.hpp"
#include "qlimit/theta.hpp"

using namespace qlimit;

static void BM_ApplyDft(benchmark::State& state) {
    const Lattice l(static_cast<int>(state.range(0)));
    const StateVector psi = upsilon_kappa(l, GaussianParams(0.2));
    for (auto _ : state) benchmark::DoNotOptimize(apply_dft(psi));
}
BENCHMARK(BM_ApplyDft)->Arg(10)->Arg(50);

static void BM_JacobiHamiltonian(benchmark::State& state) {
    const Lattice l(static_cast<int>(state.range(0)));
    const Eigen::MatrixXcd h = hamiltonian_at(l, 0.0, 1.0, 0.1, 1.0 / 5000.0).matrix();
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigh(h));
}
BENCHMARK(BM_JacobiHamiltonian)->Arg(10)->Arg(25);

static void BM_Step(benchmark::State& state, Method method) {
    SimulationConfig config = figures::fig2_config();
    const auto stepper = make_stepper(method, config, config.dt);
    Eigen::VectorXcd psi = initial_state(config).amplitudes();
    double t = 0.0;
    for (auto _ : state) {
        stepper->advance(psi, t);
        t += config.dt;
    }
    benchmark::DoNotOptimize(psi);
}
BENCHMARK_CAPTURE(BM_Step, strang, Method::strang);
BENCHMARK_CAPTURE(BM_Step, magnus2, Method::magnus2);

static void BM_EvolveFig2To1800(benchmark::State& state) {
    SimulationConfig config = figures::fig2_config();
    config.t_end = 1800.0;
    config.snapshots = {0.0, 1800.0};
    for (auto _ : state) benchmark::DoNotOptimize(evolve(config));
}
BENCHMARK(BM_EvolveFig2To1800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
