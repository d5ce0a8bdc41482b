#include "trendskew/options_lab.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace trendskew;

void BM_SimulateShortHedged(benchmark::State& state) {
    StrangleSpec spec;
    spec.vol_premium = 0.1;
    spec.market = JumpParams{GbmParams{0.0, 0.15, 100.0, 253, 252, 0}, 5.0, -0.05, 0.02};
    const auto paths = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_short_hedged(spec, paths, 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 252);
}
BENCHMARK(BM_SimulateShortHedged)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
