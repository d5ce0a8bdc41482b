#include "trendskew/market_data.hpp"
#include "trendskew/stats.hpp"
#include "trendskew/trend_engine.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace trendskew;

PriceSeries path(std::size_t n) {
    GbmParams p;
    p.n_periods = n;
    p.seed = 1;
    return gen_gbm(p);
}

void BM_GenGbm(benchmark::State& state) {
    GbmParams p;
    p.n_periods = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_gbm(p));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenGbm)->Arg(1 << 12)->Arg(1 << 16);

void BM_Ema(benchmark::State& state) {
    const auto prices = path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ema(prices.prices(), 105.0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ema)->Arg(1 << 12)->Arg(1 << 16);

void BM_ContractPnl(benchmark::State& state) {
    const auto prices = path(static_cast<std::size_t>(state.range(0)));
    const TrendConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract_pnl(prices, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ContractPnl)->Arg(1 << 12)->Arg(50401);

void BM_StatsOf(benchmark::State& state) {
    const auto pnl = contract_pnl(path(static_cast<std::size_t>(state.range(0))), TrendConfig{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(stats_of(pnl));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StatsOf)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace
