#include <benchmark/benchmark.h>

#include "assembly.hpp"
#include "dropsim/electrostatics.hpp"
#include "dropsim/elliptic.hpp"
#include "dropsim/evolution.hpp"
#include "dropsim/ring_kernels.hpp"
#include "dropsim/stokes.hpp"

namespace {

using namespace dropsim;

void BM_CompleteElliptic(benchmark::State& state) {
    double m = 0.0;
    for (auto _ : state) {
        m += 0.001;
        if (m >= 1.0) m -= 1.0;
        benchmark::DoNotOptimize(complete_elliptic(m));
    }
}
BENCHMARK(BM_CompleteElliptic);

void BM_RingLaplaceKernel(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        z += 1e-6;
        benchmark::DoNotOptimize(ring_laplace_kernel({0.7, 0.1 + z}, {1.0, 0.0}));
    }
}
BENCHMARK(BM_RingLaplaceKernel);

void BM_RingStokesKernels(benchmark::State& state) {
    double z = 0.0;
    for (auto _ : state) {
        z += 1e-6;
        benchmark::DoNotOptimize(ring_stokes_kernels({0.7, 0.1 + z}, {1.0, 0.0}, {0.6, 0.8}));
    }
}
BENCHMARK(BM_RingStokesKernels);

void BM_AssembleOperators(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const bool with_dl = state.range(1) != 0;
    const GeneratingCurve curve = make_perturbed_sphere(1.0, 0.1, 2, n);
    const SurfaceGeometry geom = geometry(curve);
    detail::AssemblyRequest req;
    req.double_layer = with_dl;
    for (auto _ : state) {
        benchmark::DoNotOptimize(detail::assemble_operators(curve, geom, req));
    }
}
BENCHMARK(BM_AssembleOperators)->Args({64, 0})->Args({128, 0})->Args({256, 0})->Args({256, 1});

void BM_SolveCharge(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GeneratingCurve curve = make_perturbed_sphere(1.0, 0.1, 2, n);
    const SurfaceGeometry geom = geometry(curve);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_charge(curve, geom, 10.0));
    }
}
BENCHMARK(BM_SolveCharge)->Arg(128)->Arg(256);

void BM_SolveVelocity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double lambda = static_cast<double>(state.range(1));
    const GeneratingCurve curve = make_perturbed_sphere(1.0, 0.1, 2, n);
    const SurfaceGeometry geom = geometry(curve);
    FluidParams params;
    params.mu1 = lambda;
    params.Q = 0.9 * critical_charge(params, 1.0);
    const ChargeSolution charge = solve_charge(curve, geom, params.Q);
    const TractionJump f = make_traction_jump(geom, charge, params);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_velocity(curve, geom, f, params));
    }
}
BENCHMARK(BM_SolveVelocity)->Args({128, 1})->Args({128, 100})->Args({256, 1});

void BM_Step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    FluidParams params;
    params.Q = critical_charge(params, 1.0);
    SimConfig config;
    config.N = n;
    config.eps_perturb = 0.1;
    const SimState initial = make_initial_state(params, config);
    for (auto _ : state) {
        benchmark::DoNotOptimize(step(initial, params, config));
    }
}
BENCHMARK(BM_Step)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
