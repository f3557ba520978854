#include <benchmark/benchmark.h>

#include <cmath>

#include "smallmiss/exact_moments.hpp"
#include "smallmiss/harness.hpp"
#include "smallmiss/special_functions.hpp"

using namespace smallmiss;

static void LogGamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma(x));
        x = x < 1e5 ? x * 1.1 : 0.5;
    }
}
BENCHMARK(LogGamma);

static void BivariateExpectation(benchmark::State& state) {
    const QuadratureSpec quad{static_cast<int>(state.range(0)), 1e-9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(numeric_expectation(
            [](double u, double w) { return std::sqrt(1 + u + 0.5 * w); },
            19.0, quad));
    }
}
BENCHMARK(BivariateExpectation)->Arg(48)->Arg(96);

static void SiMomentTriple(benchmark::State& state) {
    const QuadratureSpec quad;
    const SampleSpec spec{1, 1, 20, 20};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            si_moments(EstimatorConfig::mlike(1), spec, quad));
    }
}
BENCHMARK(SiMomentTriple);

static void FullTable(benchmark::State& state) {
    TableOptions options;
    options.which = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_table(options));
    }
}
BENCHMARK(FullTable)->Arg(1)->Arg(2)->Arg(3);
