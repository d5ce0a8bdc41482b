#pragma once

#include "trendskew/market_data.hpp"
#include "trendskew/series.hpp"
#include "trendskew/stats.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace trendskew {

enum class OptionKind { call, put };

struct OptionQuote {
    double spot = 100.0;
    double strike = 100.0;
    double vol_implied_annual = 0.2;
    double tau_years = 1.0;
    double rate_annual = 0.0;
    OptionKind kind = OptionKind::call;
};

void validate(const OptionQuote& q);

/// Black-Scholes price with continuous compounding.
double bs_price(const OptionQuote& q);
/// dPrice/dSpot.
double bs_delta(const OptionQuote& q);
/// dPrice/dVol (per unit of annual vol).
double bs_vega(const OptionQuote& q);

using MarketModel = std::variant<GbmParams, JumpParams>;

/// Annualized volatility of the model's log-returns, jumps included:
/// sqrt(vol^2 + intensity * (mean^2 + std^2)).
double expected_realized_vol(const MarketModel& market);
int periods_per_year(const MarketModel& market);

struct StrangleSpec {
    double tau_years = 1.0 / 12.0;  // constant effective maturity, in [1/12, 1]
    int n_strikes = 5;              // odd, >= 3
    double strike_width_sigmas = 1.0;
    int hedge_every_periods = 1;
    double vol_premium = 0.0;  // implied = realized * (1 + premium)
    MarketModel market = GbmParams{};
    // When set, used as the implied vol instead of realized * (1 + premium).
    std::optional<double> implied_vol_override;
};

void validate(const StrangleSpec& spec);

/// Implied vol used to price and hedge the strangle under `spec`.
double implied_vol(const StrangleSpec& spec);

struct StrangleLeg {
    OptionQuote quote;
    double weight = 0.0;
};

/// Equal-weight strikes spot * (1 + k * w * vol * sqrt(tau)) for
/// k evenly spaced in [-1, 1]: puts below spot, calls above, and half a put
/// plus half a call at the centre. The common strike weight makes the total
/// vega 1. Throws InvalidArgument when the lowest strike would be <= 0.
std::vector<StrangleLeg> build_strangle(double spot, const StrangleSpec& spec, double vol_implied);

struct HedgedPnl {
    PnlSeries pnl;
    StrangleSpec spec;
    std::string label;
};

enum class HedgeMode { hedged, unhedged };

/// P&L of one period for the short strangle struck at `spot_start`: minus
/// its mark-to-market change over one period plus `hedge_units` of
/// underlying. `dt` is one period in years.
double short_strangle_period_pnl(std::span<const StrangleLeg> legs, double spot_end, double dt,
                                 double hedge_units);

/// Pooled per-period P&L of the rolled short strangle over `n_paths`
/// independent market paths, before risk normalization. Path i uses the
/// market seed derive_seed(seed, i); the market record's own seed is ignored.
PnlSeries simulate_short_strangle(const StrangleSpec& spec, std::size_t n_paths,
                                  std::uint64_t seed, HedgeMode mode = HedgeMode::hedged);

/// Delta-hedged short strangle, normalized to unit annualized volatility.
HedgedPnl simulate_short_hedged(const StrangleSpec& spec, std::size_t n_paths, std::uint64_t seed,
                                std::string label = "strangle");

/// Rescales increments so the annualized realized volatility is exactly 1.
PnlSeries constant_risk_normalize(const PnlSeries& pnl);

struct MarketCase {
    std::string label;
    MarketModel model;
};

struct SweepPoint {
    std::string label;  // "<market>_<tau_months>m"
    std::string market;
    double tau_months = 0.0;
    StrategyStats stats;
};

/// One hedged strangle per (market, tau), market-major order. Each point is
/// simulated with seed derive_seed(seed, label).
std::vector<SweepPoint> sweep_maturities(const StrangleSpec& base, std::span<const double> taus,
                                         std::span<const MarketCase> markets, std::size_t n_paths,
                                         std::uint64_t seed,
                                         SkewEstimator estimator = SkewEstimator::pearson_median);

std::vector<SkewSharpePoint> to_points(std::span<const SweepPoint> sweep);

}  // namespace trendskew
