#include <benchmark/benchmark.h>

#include "subw/bounds.hpp"

using namespace subw;

namespace {

CanonicalProblem wide_problem() {
    std::vector<double> a(256), l(256);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = 1.0 / static_cast<double>(i + 1);
        l[i] = 0.25 * static_cast<double>(i % 8);
    }
    return canonicalize(WeightedSumProblem(0.5, a, l));
}

}  // namespace

static void BM_MomentRate(benchmark::State& state) {
    auto problem = wide_problem();
    double p = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment_rate(problem, p).value);
        p = p >= 64.0 ? 1.0 : p + 0.5;
    }
}
BENCHMARK(BM_MomentRate);

static void BM_KOfT(benchmark::State& state) {
    auto problem = wide_problem();
    double threshold = lp_norm(problem.weighted_lbar(), BetaExponent::finite(2.0)) +
                       lp_norm(problem.weighted_scales(), BetaExponent::infinite());
    double t = threshold;
    for (auto _ : state) {
        benchmark::DoNotOptimize(K_of_t(problem, t));
        t = t >= 64.0 * threshold ? threshold : t * 1.5;
    }
}
BENCHMARK(BM_KOfT);

static void BM_DualMomentRate(benchmark::State& state) {
    std::vector<double> a(64), l(64);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = 1.0 / static_cast<double>(i + 1);
        l[i] = 0.5 + 0.25 * static_cast<double>(i % 4);
    }
    auto problem = canonicalize(WeightedSumProblem(1.5, a, l));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dual_moment_rate(problem, 8.0));
    }
}
BENCHMARK(BM_DualMomentRate);
