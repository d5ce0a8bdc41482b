#pragma once

#include "trendskew/series.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace trendskew {

/// Low-moment (or, for comparison, third-moment) skewness estimator.
enum class SkewEstimator {
    pearson_median,  // 3 (mean - median) / std
    l_moment,        // L-skewness tau_3 = lambda_3 / lambda_2
    third_moment,    // bias-corrected standardized third central moment
};

std::optional<SkewEstimator> parse_skew_estimator(std::string_view name);
std::string_view to_string(SkewEstimator e);

struct StrategyStats {
    double sharpe_annual = 0.0;
    double vol_annual = 0.0;
    double skew_low_moment = 0.0;  // with the estimator requested in stats_of
    double skew_third_moment = 0.0;
    double max_drawdown = 0.0;
    std::size_t n_periods = 0;
};

/// Least-squares fit of SR = a - b * skew.
struct RegressionFit {
    double a = 0.0;
    double b = 0.0;
    double stderr_a = 0.0;
    double stderr_b = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

struct SkewSharpePoint {
    double skew = 0.0;
    double sharpe = 0.0;
};

double sample_mean(std::span<const double> x);
/// Unbiased (n - 1) standard deviation; two-pass.
double sample_std(std::span<const double> x);
/// Midpoint convention for even lengths.
double sample_median(std::span<const double> x);

// The estimators below reject samples whose spread is indistinguishable
// from rounding noise (std <= 1e-14 * max|x|) with DegenerateError.

double sharpe_annualized(std::span<const double> increments, int periods_per_year);
double sharpe_annualized(const PnlSeries& pnl);

double skew_third_moment(std::span<const double> x);
double skew_third_moment(const PnlSeries& pnl);

double pearson_median_skew(std::span<const double> x);
/// Sample L-skewness from unbiased probability-weighted moments.
double l_skewness(std::span<const double> x);

double skew_low_moment(std::span<const double> x,
                       SkewEstimator estimator = SkewEstimator::pearson_median);
double skew_low_moment(const PnlSeries& pnl,
                       SkewEstimator estimator = SkewEstimator::pearson_median);

/// Largest peak-to-trough fall of the cumulative P&L, starting from 0.
double max_drawdown(std::span<const double> increments);
double max_drawdown(const PnlSeries& pnl);

/// Ordinary least squares of sharpe on skew, homoskedastic standard errors.
/// Points are sorted before fitting, so the result does not depend on input
/// order. With exactly two points the standard errors are reported as 0.
RegressionFit fit_sr_vs_skew(std::span<const SkewSharpePoint> points);

StrategyStats stats_of(const PnlSeries& pnl,
                       SkewEstimator estimator = SkewEstimator::pearson_median);

}  // namespace trendskew
