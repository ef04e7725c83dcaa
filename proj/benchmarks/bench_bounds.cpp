#include <benchmark/benchmark.h>

#include "mmax/bounds_bounded.hpp"
#include "mmax/bounds_unbounded.hpp"
#include "mmax/oracles.hpp"
#include "mmax/sampler.hpp"
#include "mmax/selector.hpp"

using namespace mmax;

static void BM_BoundedDataDependent(benchmark::State& state) {
    SeededStream rng(1, 1);
    const auto M = static_cast<std::size_t>(state.range(0));
    const auto sample = draw_sample(make_prevalences(PrevalenceKind::zipf, 1.02, M), 2000, rng);
    const auto cfg = BoundedConfig::with_defaults(0.05);
    for (auto _ : state) benchmark::DoNotOptimize(bounded_dd_bound(sample, static_cast<Count>(M), cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BoundedDataDependent)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_Unbounded(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(unbounded_bound(10000, 1000, UnboundedConfig{}));
}
BENCHMARK(BM_Unbounded);

static void BM_LambertW0(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambert_w0(x));
        x = x < 1e6 ? x * 1.7 : 0.5;
    }
}
BENCHMARK(BM_LambertW0);

static void BM_EpsilonStar(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(epsilon_star(state.range(0), 1.0, 0.05));
}
BENCHMARK(BM_EpsilonStar)->Arg(1000)->Arg(1000000);
