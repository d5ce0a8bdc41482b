#pragma once

#include "trendskew/series.hpp"

#include <span>
#include <vector>

namespace trendskew {

enum class SignalClip {
    sign,            // sign(p - EMA(p))
    linear_clipped,  // (p - EMA(p)) / (2 sigma), clipped to [-1, 1]
};

struct TrendConfig {
    double signal_timescale_months = 5.0;
    int vol_halflife_periods = 21;
    double target_vol_annual = 1.0;
    int warmup_periods = 0;
    SignalClip signal_clip = SignalClip::sign;
};

void validate(const TrendConfig& cfg);

/// Trend predictor aligned with the source prices; values in [-1, 1].
class SignalSeries {
public:
    SignalSeries(std::vector<Date> dates, std::vector<double> values);

    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
};

/// Exponential moving average with decay 2^(-1/halflife), seeded with the
/// first element.
std::vector<double> ema(std::span<const double> series, double halflife_periods);

/// EMA half-life, in periods, of the trend signal:
/// round(months * periods_per_year / 12), at least one period.
int signal_halflife_periods(const TrendConfig& cfg, int periods_per_year);

/// Signal at t from prices strictly before t: sign or clipped-linear
/// transform of p(t-1) - EMA(p)(t-1). Zero during warmup and at t = 0.
SignalSeries trend_signal(const PriceSeries& prices, const TrendConfig& cfg);

/// sigma(t) = sqrt(EMA of squared price changes observed up to t-1), floored
/// at 1e-12 * p(0). The first two entries have no observed change and carry
/// the floor.
std::vector<double> vol_estimate(const PriceSeries& prices, int halflife_periods);

/// Position held over (t-1, t]: signal(t) * target_per_period / sigma(t).
/// Zero for t < max(warmup, 2).
std::vector<double> trend_positions(const PriceSeries& prices, const TrendConfig& cfg);

/// pnl(t) = position(t) * (p(t) - p(t-1)).
PnlSeries contract_pnl(const PriceSeries& prices, const TrendConfig& cfg);

/// Sums increments over the union of calendars (missing dates contribute 0).
/// With `renormalize`, rescales the sum to `target_vol_annual` full-sample
/// realized volatility. All inputs must share periods_per_year.
PnlSeries aggregate(std::span<const PnlSeries> pnls, bool renormalize,
                    double target_vol_annual = 1.0);

}  // namespace trendskew
