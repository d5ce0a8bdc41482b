#include "trendskew/trend_engine.hpp"

#include "trendskew/errors.hpp"
#include "trendskew/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace trendskew {

void validate(const TrendConfig& cfg) {
    if (!std::isfinite(cfg.signal_timescale_months) || cfg.signal_timescale_months <= 0.0) {
        throw InvalidArgument("TrendConfig: signal_timescale_months must be > 0");
    }
    if (cfg.vol_halflife_periods < 2) {
        throw InvalidArgument("TrendConfig: vol_halflife_periods must be >= 2");
    }
    if (!std::isfinite(cfg.target_vol_annual) || cfg.target_vol_annual <= 0.0) {
        throw InvalidArgument("TrendConfig: target_vol_annual must be > 0");
    }
    if (cfg.warmup_periods < 0) {
        throw InvalidArgument("TrendConfig: warmup_periods must be >= 0");
    }
}

SignalSeries::SignalSeries(std::vector<Date> dates, std::vector<double> values)
    : dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size()) {
        throw InvalidArgument("SignalSeries: dates and values differ in length");
    }
    for (double v : values_) {
        if (!(std::abs(v) <= 1.0)) {
            throw InvalidArgument("SignalSeries: values must lie in [-1, 1]");
        }
    }
}

std::vector<double> ema(std::span<const double> series, double halflife_periods) {
    if (series.empty()) {
        throw InvalidArgument("ema: empty input");
    }
    if (!(halflife_periods > 0.0) || !std::isfinite(halflife_periods)) {
        throw InvalidArgument("ema: halflife_periods must be > 0");
    }
    const double lambda = std::exp2(-1.0 / halflife_periods);
    std::vector<double> out(series.size());
    out[0] = series[0];
    for (std::size_t t = 1; t < series.size(); ++t) {
        out[t] = lambda * out[t - 1] + (1.0 - lambda) * series[t];
    }
    return out;
}

int signal_halflife_periods(const TrendConfig& cfg, int periods_per_year) {
    const double periods = cfg.signal_timescale_months * periods_per_year / 12.0;
    return std::max(1, static_cast<int>(std::lround(periods)));
}

std::vector<double> vol_estimate(const PriceSeries& prices, int halflife_periods) {
    if (halflife_periods <= 0) {
        throw InvalidArgument("vol_estimate: halflife_periods must be > 0");
    }
    if (prices.size() < 2) {
        throw DataError("vol_estimate: series '" + prices.contract_id() +
                        "' needs at least 2 prices");
    }
    const auto p = prices.prices();
    const double floor = 1e-12 * p[0];
    const double lambda = std::exp2(-1.0 / halflife_periods);
    std::vector<double> sigma(p.size(), floor);
    double mean_sq = 0.0;
    for (std::size_t t = 2; t < p.size(); ++t) {
        const double d = p[t - 1] - p[t - 2];
        mean_sq = t == 2 ? d * d : lambda * mean_sq + (1.0 - lambda) * d * d;
        sigma[t] = std::max(std::sqrt(mean_sq), floor);
    }
    return sigma;
}

SignalSeries trend_signal(const PriceSeries& prices, const TrendConfig& cfg) {
    validate(cfg);
    const auto n = prices.size();
    if (n <= static_cast<std::size_t>(cfg.warmup_periods)) {
        throw DataError("trend_signal: series '" + prices.contract_id() + "' has " +
                        std::to_string(n) + " prices, not more than warmup " +
                        std::to_string(cfg.warmup_periods));
    }
    const auto p = prices.prices();
    const auto smooth = ema(p, signal_halflife_periods(cfg, prices.periods_per_year()));
    std::vector<double> sigma;
    if (cfg.signal_clip == SignalClip::linear_clipped && n >= 2) {
        sigma = vol_estimate(prices, cfg.vol_halflife_periods);
    }
    std::vector<double> values(n, 0.0);
    const auto first = std::max<std::size_t>(1, static_cast<std::size_t>(cfg.warmup_periods));
    for (std::size_t t = first; t < n; ++t) {
        const double raw = p[t - 1] - smooth[t - 1];
        if (cfg.signal_clip == SignalClip::sign) {
            values[t] = raw > 0.0 ? 1.0 : (raw < 0.0 ? -1.0 : 0.0);
        } else {
            constexpr double kappa = 2.0;
            values[t] = std::clamp(raw / (kappa * sigma[t]), -1.0, 1.0);
        }
    }
    return SignalSeries({prices.dates().begin(), prices.dates().end()}, std::move(values));
}

std::vector<double> trend_positions(const PriceSeries& prices, const TrendConfig& cfg) {
    const auto signal = trend_signal(prices, cfg);
    const auto n = prices.size();
    std::vector<double> position(n, 0.0);
    if (n < 2) {
        return position;
    }
    const auto sigma = vol_estimate(prices, cfg.vol_halflife_periods);
    const double target_per_period =
        cfg.target_vol_annual / std::sqrt(static_cast<double>(prices.periods_per_year()));
    const auto first = std::max<std::size_t>(2, static_cast<std::size_t>(cfg.warmup_periods));
    for (std::size_t t = first; t < n; ++t) {
        position[t] = signal.values()[t] * target_per_period / sigma[t];
    }
    return position;
}

PnlSeries contract_pnl(const PriceSeries& prices, const TrendConfig& cfg) {
    const auto position = trend_positions(prices, cfg);
    const auto p = prices.prices();
    std::vector<double> pnl(p.size(), 0.0);
    for (std::size_t t = 1; t < p.size(); ++t) {
        pnl[t] = position[t] * (p[t] - p[t - 1]);
    }
    return PnlSeries({prices.dates().begin(), prices.dates().end()}, std::move(pnl),
                     prices.periods_per_year());
}

PnlSeries aggregate(std::span<const PnlSeries> pnls, bool renormalize, double target_vol_annual) {
    if (pnls.empty()) {
        throw InvalidArgument("aggregate: no P&L series given");
    }
    if (!(target_vol_annual > 0.0)) {
        throw InvalidArgument("aggregate: target_vol_annual must be > 0");
    }
    const int ppy = pnls.front().periods_per_year();
    std::map<Date, double> book;
    for (const auto& s : pnls) {
        if (s.periods_per_year() != ppy) {
            throw InvalidArgument("aggregate: series disagree on periods_per_year");
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            book[s.dates()[i]] += s.values()[i];
        }
    }
    std::vector<Date> dates;
    std::vector<double> values;
    dates.reserve(book.size());
    values.reserve(book.size());
    for (const auto& [d, v] : book) {
        dates.push_back(d);
        values.push_back(v);
    }
    if (renormalize) {
        const bool all_zero = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
        if (all_zero || values.size() < 2) {
            throw DegenerateError("aggregate: cannot renormalize an all-zero or single-period aggregate");
        }
        const double sd = sample_std(values);
        if (!(sd > 0.0)) {
            throw DegenerateError("aggregate: aggregate P&L has zero variance");
        }
        const double factor = target_vol_annual / std::sqrt(static_cast<double>(ppy)) / sd;
        for (double& v : values) {
            v *= factor;
        }
    }
    return PnlSeries(std::move(dates), std::move(values), ppy);
}

}  // namespace trendskew
