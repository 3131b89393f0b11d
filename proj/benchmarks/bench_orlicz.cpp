#include <benchmark/benchmark.h>

#include "subw/orlicz.hpp"

using namespace subw;

static void BM_GboExpectation(benchmark::State& state) {
    auto s = SurvivalFunction::z_law(0.5, 2.0);
    auto g = GBOFunction::gbo(0.5, 2.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gbo_expectation(s, g, 4.0));
    }
}
BENCHMARK(BM_GboExpectation);

static void BM_OrliczNormAnalytic(benchmark::State& state) {
    auto s = SurvivalFunction::z_law(1.0, 1.0);
    auto g = GBOFunction::gbo(1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(orlicz_norm_analytic(s, g).eta_star);
    }
}
BENCHMARK(BM_OrliczNormAnalytic);

static void BM_LogPhiPZ(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_phi_p_z(8.0, 8.0, 0.5, 2.0));
    }
}
BENCHMARK(BM_LogPhiPZ);

static void BM_SequenceOrliczNorm(benchmark::State& state) {
    auto problem = canonicalize(WeightedSumProblem(
        0.5, std::vector<double>(8, 1.0), std::vector<double>(8, 1.0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sequence_orlicz_norm(problem, 4.0));
    }
}
BENCHMARK(BM_SequenceOrliczNorm);
