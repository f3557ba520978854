#include <benchmark/benchmark.h>

#include "smallmiss/rng.hpp"

using namespace smallmiss;

static void RawWords(benchmark::State& state) {
    RngStream rng(42, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rng.next_u64());
    }
}
BENCHMARK(RawWords);

static void NormalDraw(benchmark::State& state) {
    RngStream rng(42, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_normal(rng, 0.0, 1.0));
    }
}
BENCHMARK(NormalDraw);

static void ChiSquareDraw(benchmark::State& state) {
    RngStream rng(42, 0);
    const double df = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_chi_square(rng, df));
    }
}
BENCHMARK(ChiSquareDraw)->Arg(5)->Arg(40)->Arg(190);
