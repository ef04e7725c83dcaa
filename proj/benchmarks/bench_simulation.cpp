#include <benchmark/benchmark.h>

#include "mmax/estimators.hpp"
#include "mmax/sampler.hpp"
#include "mmax/stopping.hpp"

using namespace mmax;

static void BM_DrawSample(benchmark::State& state) {
    const auto model = make_prevalences(PrevalenceKind::zipf, 1.02, static_cast<std::size_t>(state.range(0)));
    SeededStream rng(2, 2);
    for (auto _ : state) benchmark::DoNotOptimize(draw_sample(model, 2000, rng));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DrawSample)->Arg(1000)->Arg(10000);

static void BM_SequentialUnits(benchmark::State& state) {
    const auto model = make_prevalences(PrevalenceKind::zipf, 1.05, 1500);
    SeededStream rng(3, 3);
    SequentialSampler sampler(model, 0.001, rng);
    for (auto _ : state) benchmark::DoNotOptimize(sampler.next().present.size());
}
BENCHMARK(BM_SequentialUnits);

static void BM_StoppingRun(benchmark::State& state) {
    const auto scenarios = default_stopping_scenarios();
    const auto& model = scenarios[static_cast<std::size_t>(state.range(0))].model;
    const auto policy = StoppingPolicy::mmax_bounded(0.005, 0.05, 10000);
    std::uint64_t rep = 0;
    for (auto _ : state) {
        SeededStream rng(4, rep++);
        benchmark::DoNotOptimize(run_stopping(model, policy, 0.001, rng));
    }
}
BENCHMARK(BM_StoppingRun)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_AccumulationCurve(benchmark::State& state) {
    SeededStream rng(5, 5);
    const auto m = draw_incidence_matrix(make_prevalences(PrevalenceKind::zipf, 1.05, 1500), 1000, rng);
    for (auto _ : state) benchmark::DoNotOptimize(accumulation_curve(m, 10, rng));
}
BENCHMARK(BM_AccumulationCurve)->Unit(benchmark::kMillisecond);
