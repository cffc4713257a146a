#include <vector>

#include <benchmark/benchmark.h>

#include "bicres/background.hpp"
#include "bicres/darboux.hpp"
#include "bicres/jost.hpp"
#include "bicres/resonance.hpp"
#include "bicres/truncated.hpp"

using namespace bicres;

namespace {

const PotentialParams kDefault = PotentialParams::bic(1.0, 1.0);

const TruncatedConfig& config() {
    static const TruncatedConfig c(kDefault, 5000.0);
    return c;
}

}  // namespace

static void BM_PotentialV4(benchmark::State& state) {
    double r = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(potential_v4(kDefault, r));
        r = r < 100.0 ? r + 0.01 : 0.0;
    }
}
BENCHMARK(BM_PotentialV4);

static void BM_JostValue(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(jost_value(kDefault, 1.5, 3.0));
}
BENCHMARK(BM_JostValue);

// d, g in double (far from q) and in quad precision (inside the band)
static void BM_DG(benchmark::State& state) {
    const double k = state.range(0) == 0 ? 0.95 : 0.9995;
    for (auto _ : state) benchmark::DoNotOptimize(dg(config(), k));
}
BENCHMARK(BM_DG)->Arg(0)->Arg(1);

static void BM_PhaseCurve(benchmark::State& state) {
    const auto grid = refined_grid(0.995, 1.005, 1e-5, 1.0, 0.01, 1e-6);
    for (auto _ : state) benchmark::DoNotOptimize(phase_shift_unwrapped(config(), grid));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_PhaseCurve)->Unit(benchmark::kMillisecond);

static void BM_FindResonances(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_resonances(config(), {0.99, 1.01, -0.001, 0.0}));
    }
}
BENCHMARK(BM_FindResonances)->Unit(benchmark::kMillisecond);

static void BM_BoundStateNorm(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(BoundState(kDefault).norm());
}
BENCHMARK(BM_BoundStateNorm)->Unit(benchmark::kMillisecond);

static void BM_FitLambda(benchmark::State& state) {
    const Doublet d{0.998984403240923, 0.0001730065546050277, 1.001015575681504,
                    0.0001731296975893832};
    auto sigma = [](double k) { return cross_section(config(), k); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_lambda(config(), d, sigma, default_window(d)));
    }
}
BENCHMARK(BM_FitLambda)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
