#include <benchmark/benchmark.h>

#include "smallmiss/harness.hpp"
#include "smallmiss/imputation.hpp"

using namespace smallmiss;

static void RunMi(benchmark::State& state) {
    const SampleSpec spec{1, 1, 20, 20};
    const EstimatorConfig config = EstimatorConfig::posterior_draw(2);
    const int d = static_cast<int>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        RngStream rng(7, stream++);
        const auto obs = generate_observed(spec, rng);
        benchmark::DoNotOptimize(run_mi(spec, config, d, rng, obs));
    }
}
BENCHMARK(RunMi)->Arg(1)->Arg(5)->Arg(50);

static void VerifyCampaign(benchmark::State& state) {
    const SampleSpec spec{1, 1, 20, 20};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_mi_moments(
            spec, EstimatorConfig::mlike(1), 5, 10000, 3, 0));
    }
}
BENCHMARK(VerifyCampaign)->Unit(benchmark::kMillisecond);
