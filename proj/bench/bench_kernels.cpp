// Serial reference kernels against their OpenMP counterparts, plus one full
// integrator step. Run with --benchmark_filter to select a family.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "zk/dynamics.hpp"
#include "zk/experiments.hpp"
#include "zk/kernels.hpp"
#include "zk/spectral.hpp"

namespace {

using namespace zk;

struct Fixture {
    StripGrid grid;
    SineBasis basis;
    std::vector<double> field;
    std::vector<double> coeffs;
    std::vector<double> out;

    explicit Fixture(int nx, int ny = 32)
        : grid(build_grid(std::numbers::pi, 10 * std::numbers::pi, nx, ny)), basis(grid), field(grid.size()), coeffs(grid.size()),
          out(grid.size()) {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> n(0.0, 1.0);
        for (double& v : field) v = n(rng);
        for (double& v : coeffs) v = n(rng);
    }
};

void set_threads(benchmark::State& state) { kernels::set_threads(static_cast<int>(state.range(1))); }

void BM_analysis_serial(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        kernels::reference::sine_analysis(f.basis.table(), f.grid.Nx, f.grid.Ny, f.grid.dy, f.field, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
}

void BM_analysis_omp(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    set_threads(state);
    for (auto _ : state) {
        kernels::sine_analysis(f.basis.table(), f.grid.Nx, f.grid.Ny, f.grid.dy, f.field, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
}

void BM_synthesis_serial(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        kernels::reference::sine_synthesis(f.basis.table(), f.grid.Nx, f.grid.Ny, f.coeffs, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
}

void BM_synthesis_omp(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    set_threads(state);
    for (auto _ : state) {
        kernels::sine_synthesis(f.basis.table(), f.grid.Nx, f.grid.Ny, f.coeffs, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
}

void BM_cubic_flux_serial(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        kernels::reference::cubic_flux_dx(f.grid.Nx, f.grid.Ny, f.grid.dx, f.field, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
}

void BM_cubic_flux_omp(benchmark::State& state) {
    Fixture f(static_cast<int>(state.range(0)));
    set_threads(state);
    for (auto _ : state) {
        kernels::cubic_flux_dx(f.grid.Nx, f.grid.Ny, f.grid.dx, f.field, f.out);
        benchmark::DoNotOptimize(f.out.data());
    }
}

void BM_step(benchmark::State& state) {
    const StripGrid grid = build_grid(std::numbers::pi, 10 * std::numbers::pi, static_cast<int>(state.range(0)), 32);
    ImexOptions opts;
    opts.parallel = state.range(1) > 0;
    kernels::set_threads(static_cast<int>(state.range(1)));
    const ImexIntegrator integ(grid, 0.25 * grid.dx, opts);
    InitialData d;
    d.l2_norm = 0.05;
    SolverState s = integ.step(integ.initial_state(make_initial_data(grid, d)));
    for (auto _ : state) {
        SolverState next = integ.step(s);
        benchmark::DoNotOptimize(next.modes.values().data());
    }
}

// Arguments: {Nx, threads}; threads = 0 selects the serial path for BM_step.
void sizes(benchmark::internal::Benchmark* b) {
    for (int nx : {256, 1024, 4096}) b->Args({nx, 0});
}

void sizes_threads(benchmark::internal::Benchmark* b) {
    for (int nx : {256, 1024, 4096})
        for (int t : {1, 2, 4}) b->Args({nx, t});
}

}  // namespace

BENCHMARK(BM_analysis_serial)->Apply(sizes);
BENCHMARK(BM_analysis_omp)->Apply(sizes_threads);
BENCHMARK(BM_synthesis_serial)->Apply(sizes);
BENCHMARK(BM_synthesis_omp)->Apply(sizes_threads);
BENCHMARK(BM_cubic_flux_serial)->Apply(sizes);
BENCHMARK(BM_cubic_flux_omp)->Apply(sizes_threads);
BENCHMARK(BM_step)->Apply([](benchmark::internal::Benchmark* b) {
    for (int nx : {256, 1024})
        for (int t : {0, 1, 2, 4}) b->Args({nx, t});
});

BENCHMARK_MAIN();
