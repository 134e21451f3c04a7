// bench_core.cpp — Timings for the expensive stages of a figure-of-merit evaluation.

#include <benchmark/benchmark.h>

#include "qdsps/figures_of_merit.hpp"
#include "qdsps/spectra.hpp"

using namespace qdsps;

namespace {

const PhononEnvironment& warm() {
    static const PhononEnvironment env({0.03, 1.45, 4.0});
    return env;
}

} // namespace

// Arg 0 is the temperature in K; T = 0 runs to the grid cap with a long tail.
static void PhononGrid(benchmark::State& state) {
    const double T = double(state.range(0));
    for (auto _ : state) {
        PhononEnvironment env({0.03, 1.45, T});
        benchmark::DoNotOptimize(env.franck_condon());
    }
}
BENCHMARK(PhononGrid)->Arg(4)->Arg(0)->Unit(benchmark::kMillisecond);

static void KernelTable(benchmark::State& state) {
    const std::vector<complex> rates(std::size_t(state.range(0)), complex(-0.01, 0.05));
    for (auto _ : state) {
        SidebandKernel k(warm(), rates);
        benchmark::DoNotOptimize(k(0, 0.1));
    }
}
BENCHMARK(KernelTable)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void MeritFiltered(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(compute_merit(QDParams{}, FilteredWaveguide{}, warm()).I);
}
BENCHMARK(MeritFiltered)->Unit(benchmark::kMillisecond);

// Arg 0 is kappa_c in ueV: strong coupling, near the exceptional point, weak coupling.
static void MeritCavity(benchmark::State& state) {
    const ResonantCavity cav{30.0, double(state.range(0)), 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(compute_merit(QDParams{}, cav, warm()).I);
}
BENCHMARK(MeritCavity)->Arg(60)->Arg(120)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
