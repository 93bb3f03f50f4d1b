// bench_kernels.cpp — serial reference vs OpenMP kernels

#include <benchmark/benchmark.h>

#include "qmaps/dynamics.hpp"
#include "qmaps/generators.hpp"
#include "qmaps/regions.hpp"

namespace {

qmaps::Exec exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? qmaps::Exec::Serial : qmaps::Exec::Parallel;
}

void BM_ClassifyGrid(benchmark::State& state) {
    qmaps::GridSpec spec;
    spec.d = 3;
    spec.n_alpha = 21;
    spec.n_beta = 21;
    const qmaps::NumericOptions opt{64, 42, 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmaps::classify_grid(spec, opt, exec_of(state)));
    }
}

void BM_Trajectory(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qmaps::trajectory(qmaps::schedule::WeylMixture{4}, 3.0, 200, exec_of(state)));
    }
}

} // namespace

BENCHMARK(BM_ClassifyGrid)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Trajectory)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
