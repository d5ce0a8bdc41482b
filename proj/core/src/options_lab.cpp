#include "trendskew/options_lab.hpp"

#include "trendskew/errors.hpp"
#include "trendskew/rng.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace trendskew {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

struct D12 {
    double d1;
    double d2;
};

D12 d12(const OptionQuote& q) {
    const double sd = q.vol_implied_annual * std::sqrt(q.tau_years);
    const double d1 =
        (std::log(q.spot / q.strike) + (q.rate_annual + 0.5 * q.vol_implied_annual * q.vol_implied_annual) * q.tau_years) / sd;
    return {d1, d1 - sd};
}

double intrinsic(const OptionQuote& q) {
    return q.kind == OptionKind::call ? std::max(q.spot - q.strike, 0.0)
                                      : std::max(q.strike - q.spot, 0.0);
}

// Value of `q` re-marked at `spot` with `tau` years left; expired options pay intrinsic.
double mark(const OptionQuote& q, double spot, double tau) {
    OptionQuote m = q;
    m.spot = spot;
    m.tau_years = tau;
    return tau > 0.0 ? bs_price(m) : intrinsic(m);
}

PriceSeries generate(const MarketModel& market, std::uint64_t seed, const std::string& id) {
    return std::visit(
        [&](auto params) {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, GbmParams>) {
                params.seed = seed;
                return gen_gbm(params, id);
            } else {
                params.base.seed = seed;
                return gen_jump_diffusion(params, id);
            }
        },
        market);
}

const GbmParams& base_of(const MarketModel& market) {
    if (const auto* g = std::get_if<GbmParams>(&market)) {
        return *g;
    }
    return std::get<JumpParams>(market).base;
}

std::string format_months(double months) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", months);
    return buf;
}

}  // namespace

void validate(const OptionQuote& q) {
    const bool ok = std::isfinite(q.spot) && q.spot > 0.0 && std::isfinite(q.strike) &&
                    q.strike > 0.0 && std::isfinite(q.vol_implied_annual) &&
                    q.vol_implied_annual > 0.0 && std::isfinite(q.tau_years) && q.tau_years > 0.0 &&
                    std::isfinite(q.rate_annual);
    if (!ok) {
        throw InvalidArgument("OptionQuote: spot, strike, vol and tau must be finite and > 0");
    }
}

double bs_price(const OptionQuote& q) {
    validate(q);
    const auto [d1, d2] = d12(q);
    const double discounted_strike = q.strike * std::exp(-q.rate_annual * q.tau_years);
    const double price = q.kind == OptionKind::call
                             ? q.spot * norm_cdf(d1) - discounted_strike * norm_cdf(d2)
                             : discounted_strike * norm_cdf(-d2) - q.spot * norm_cdf(-d1);
    return std::max(price, 0.0);
}

double bs_delta(const OptionQuote& q) {
    validate(q);
    const double n1 = norm_cdf(d12(q).d1);
    return q.kind == OptionKind::call ? n1 : n1 - 1.0;
}

double bs_vega(const OptionQuote& q) {
    validate(q);
    return q.spot * norm_pdf(d12(q).d1) * std::sqrt(q.tau_years);
}

double expected_realized_vol(const MarketModel& market) {
    const GbmParams& b = base_of(market);
    double variance = b.vol_annual * b.vol_annual;
    if (const auto* j = std::get_if<JumpParams>(&market)) {
        variance += j->jump_intensity_annual *
                    (j->jump_mean_log * j->jump_mean_log + j->jump_std_log * j->jump_std_log);
    }
    return std::sqrt(variance);
}

int periods_per_year(const MarketModel& market) { return base_of(market).periods_per_year; }

void validate(const StrangleSpec& spec) {
    constexpr double slack = 1e-12;
    if (!(spec.tau_years >= 1.0 / 12.0 - slack && spec.tau_years <= 1.0 + slack)) {
        throw InvalidArgument("StrangleSpec: tau_years " + std::to_string(spec.tau_years) +
                              " outside [1/12, 1] (1 to 12 months)");
    }
    if (spec.n_strikes < 3 || spec.n_strikes % 2 == 0) {
        throw InvalidArgument("StrangleSpec: n_strikes must be odd and >= 3");
    }
    if (!std::isfinite(spec.strike_width_sigmas) || spec.strike_width_sigmas <= 0.0) {
        throw InvalidArgument("StrangleSpec: strike_width_sigmas must be > 0");
    }
    if (spec.hedge_every_periods < 1) {
        throw InvalidArgument("StrangleSpec: hedge_every_periods must be >= 1");
    }
    if (!std::isfinite(spec.vol_premium) || spec.vol_premium <= -1.0) {
        throw InvalidArgument("StrangleSpec: vol_premium must be > -1");
    }
    if (spec.implied_vol_override &&
        !(std::isfinite(*spec.implied_vol_override) && *spec.implied_vol_override > 0.0)) {
        throw InvalidArgument("StrangleSpec: implied_vol_override must be > 0");
    }
    std::visit([](const auto& m) { validate(m); }, spec.market);
}

double implied_vol(const StrangleSpec& spec) {
    const double iv = spec.implied_vol_override.value_or(expected_realized_vol(spec.market) *
                                                         (1.0 + spec.vol_premium));
    if (!(iv > 0.0) || !std::isfinite(iv)) {
        throw InvalidArgument(
            "StrangleSpec: implied vol is zero; a zero-vol market needs implied_vol_override");
    }
    return iv;
}

std::vector<StrangleLeg> build_strangle(double spot, const StrangleSpec& spec, double vol_implied) {
    validate(spec);
    if (!(spot > 0.0) || !std::isfinite(spot) || !(vol_implied > 0.0) || !std::isfinite(vol_implied)) {
        throw InvalidArgument("build_strangle: spot and vol_implied must be finite and > 0");
    }
    const double half_width = spec.strike_width_sigmas * vol_implied * std::sqrt(spec.tau_years);
    if (spot * (1.0 - half_width) <= 0.0) {
        throw InvalidArgument("build_strangle: strike grid reaches non-positive strikes; reduce "
                              "strike_width_sigmas");
    }
    const int n = spec.n_strikes;
    const int centre = (n - 1) / 2;
    std::vector<StrangleLeg> legs;
    legs.reserve(static_cast<std::size_t>(n) + 1);
    double total_vega = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = -1.0 + 2.0 * i / (n - 1);
        OptionQuote q{spot, spot * (1.0 + k * half_width), vol_implied, spec.tau_years, 0.0,
                      OptionKind::put};
        total_vega += bs_vega(q);
        if (i < centre) {
            legs.push_back({q, 1.0});
        } else if (i > centre) {
            q.kind = OptionKind::call;
            legs.push_back({q, 1.0});
        } else {
            q.strike = spot;
            legs.push_back({q, 0.5});
            q.kind = OptionKind::call;
            legs.push_back({q, 0.5});
        }
    }
    for (auto& leg : legs) {
        leg.weight /= total_vega;
    }
    return legs;
}

double short_strangle_period_pnl(std::span<const StrangleLeg> legs, double spot_end, double dt,
                                 double hedge_units) {
    if (legs.empty()) {
        return 0.0;
    }
    const double spot_start = legs.front().quote.spot;
    double value_start = 0.0;
    double value_end = 0.0;
    for (const auto& leg : legs) {
        value_start += leg.weight * bs_price(leg.quote);
        value_end += leg.weight * mark(leg.quote, spot_end, leg.quote.tau_years - dt);
    }
    return -(value_end - value_start) + hedge_units * (spot_end - spot_start);
}

PnlSeries simulate_short_strangle(const StrangleSpec& spec, std::size_t n_paths, std::uint64_t seed,
                                  HedgeMode mode) {
    validate(spec);
    if (n_paths < 1) {
        throw InvalidArgument("simulate_short_strangle: n_paths must be >= 1");
    }
    const GbmParams& base = base_of(spec.market);
    if (base.n_periods < 2) {
        throw InvalidArgument("simulate_short_strangle: market n_periods must be >= 2");
    }
    constexpr std::size_t max_total = std::size_t{1} << 32;
    const std::size_t steps = base.n_periods - 1;
    if (n_paths > max_total / steps) {
        throw InvalidArgument("simulate_short_strangle: n_paths * n_periods is too large");
    }
    const double iv = implied_vol(spec);
    const int ppy = base.periods_per_year;
    const double dt = 1.0 / ppy;
    const auto k = static_cast<std::size_t>(spec.hedge_every_periods);

    std::vector<double> pnl;
    pnl.reserve(n_paths * steps);
    for (std::size_t path = 0; path < n_paths; ++path) {
        const auto series = generate(spec.market, derive_seed(seed, path), "path");
        const auto s = series.prices();
        double hedge = 0.0;
        for (std::size_t t = 0; t < steps; ++t) {
            const auto legs = build_strangle(s[t], spec, iv);
            if (mode == HedgeMode::hedged && t % k == 0) {
                hedge = 0.0;
                for (const auto& leg : legs) {
                    hedge += leg.weight * bs_delta(leg.quote);
                }
            }
            pnl.push_back(short_strangle_period_pnl(legs, s[t + 1], dt, hedge));
        }
    }
    auto dates = synthetic_calendar(pnl.size(), ppy);
    return PnlSeries(std::move(dates), std::move(pnl), ppy);
}

HedgedPnl simulate_short_hedged(const StrangleSpec& spec, std::size_t n_paths, std::uint64_t seed,
                                std::string label) {
    auto raw = simulate_short_strangle(spec, n_paths, seed, HedgeMode::hedged);
    return HedgedPnl{constant_risk_normalize(raw), spec, std::move(label)};
}

PnlSeries constant_risk_normalize(const PnlSeries& pnl) {
    const auto x = pnl.values();
    if (x.size() < 2) {
        throw DegenerateError("constant_risk_normalize: needs at least 2 increments");
    }
    double scale = 0.0;
    for (double v : x) {
        scale = std::max(scale, std::abs(v));
    }
    const double sd = sample_std(x);
    if (scale == 0.0 || !(sd > 1e-14 * scale)) {
        throw DegenerateError("constant_risk_normalize: P&L has zero variance");
    }
    return pnl.scaled(1.0 / (sd * std::sqrt(static_cast<double>(pnl.periods_per_year()))));
}

std::vector<SweepPoint> sweep_maturities(const StrangleSpec& base, std::span<const double> taus,
                                         std::span<const MarketCase> markets, std::size_t n_paths,
                                         std::uint64_t seed, SkewEstimator estimator) {
    std::vector<SweepPoint> out;
    out.reserve(taus.size() * markets.size());
    for (const auto& market : markets) {
        for (double tau : taus) {
            StrangleSpec spec = base;
            spec.tau_years = tau;
            spec.market = market.model;
            validate(spec);
            SweepPoint point;
            point.market = market.label;
            point.tau_months = tau * 12.0;
            point.label = market.label + "_" + format_months(point.tau_months) + "m";
            const auto hedged =
                simulate_short_hedged(spec, n_paths, derive_seed(seed, point.label), point.label);
            point.stats = stats_of(hedged.pnl, estimator);
            out.push_back(std::move(point));
        }
    }
    return out;
}

std::vector<SkewSharpePoint> to_points(std::span<const SweepPoint> sweep) {
    std::vector<SkewSharpePoint> pts;
    pts.reserve(sweep.size());
    for (const auto& p : sweep) {
        pts.push_back({p.stats.skew_low_moment, p.stats.sharpe_annual});
    }
    return pts;
}

}  // namespace trendskew
