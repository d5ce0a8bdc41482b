#include "trendskew/options_lab.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace trendskew;

void BM_BsPrice(benchmark::State& state) {
    OptionQuote q{100.0, 95.0, 0.2, 0.25, 0.0, OptionKind::put};
    for (auto _ : state) {
        q.strike += 1e-9;
        benchmark::DoNotOptimize(bs_price(q));
    }
}
BENCHMARK(BM_BsPrice);

void BM_BsDelta(benchmark::State& state) {
    OptionQuote q{100.0, 105.0, 0.2, 0.25, 0.0, OptionKind::call};
    for (auto _ : state) {
        q.strike += 1e-9;
        benchmark::DoNotOptimize(bs_delta(q));
    }
}
BENCHMARK(BM_BsDelta);

void BM_BuildStrangle(benchmark::State& state) {
    StrangleSpec spec;
    spec.n_strikes = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_strangle(100.0, spec, 0.2));
    }
}
BENCHMARK(BM_BuildStrangle)->Arg(3)->Arg(5)->Arg(21);

}  // namespace
