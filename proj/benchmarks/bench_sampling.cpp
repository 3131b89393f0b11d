#include <benchmark/benchmark.h>

#include "subw/covapp.hpp"
#include "subw/sampling.hpp"

using namespace subw;

static void BM_SampleZ(benchmark::State& state) {
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto batch = sample_z(0.5, 2.0, count, seed++);
        benchmark::DoNotOptimize(batch.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}
BENCHMARK(BM_SampleZ)->Arg(1 << 12)->Arg(1 << 16);

static void BM_SampleZstar(benchmark::State& state) {
    auto problem = canonicalize(WeightedSumProblem(
        0.5, std::vector<double>(16, 1.0), std::vector<double>(16, 1.0)));
    const std::size_t reps = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto batch = sample_zstar(problem, reps, seed++);
        benchmark::DoNotOptimize(batch.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(reps * 16));
}
BENCHMARK(BM_SampleZstar)->Arg(1 << 10)->Arg(1 << 14);

static void BM_CovLeadingTerm(benchmark::State& state) {
    covapp::CovExperimentConfig config{20, 200, 10, 1, 0};
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto stats = covapp::leading_term(config, seed++);
        benchmark::DoNotOptimize(stats.sup_term);
    }
}
BENCHMARK(BM_CovLeadingTerm);
