#include "trendskew/stats.hpp"

#include "trendskew/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace trendskew {

namespace {

void require_size(std::span<const double> x, std::size_t n, const char* what) {
    if (x.size() < n) {
        throw InvalidArgument(std::string(what) + ": needs at least " + std::to_string(n) +
                              " observations, got " + std::to_string(x.size()));
    }
}

// Sample std, rejecting spreads that are pure rounding noise.
double checked_std(std::span<const double> x, const char* what) {
    double scale = 0.0;
    for (double v : x) {
        scale = std::max(scale, std::abs(v));
    }
    const double sd = sample_std(x);
    if (scale == 0.0 || !(sd > 1e-14 * scale)) {
        throw DegenerateError(std::string(what) + ": sample has zero variance");
    }
    return sd;
}

}  // namespace

std::optional<SkewEstimator> parse_skew_estimator(std::string_view name) {
    if (name == "pearson") {
        return SkewEstimator::pearson_median;
    }
    if (name == "l-moment") {
        return SkewEstimator::l_moment;
    }
    if (name == "third-moment") {
        return SkewEstimator::third_moment;
    }
    return std::nullopt;
}

std::string_view to_string(SkewEstimator e) {
    switch (e) {
    case SkewEstimator::pearson_median:
        return "pearson";
    case SkewEstimator::l_moment:
        return "l-moment";
    case SkewEstimator::third_moment:
        return "third-moment";
    }
    return "pearson";
}

double sample_mean(std::span<const double> x) {
    require_size(x, 1, "sample_mean");
    double sum = 0.0;
    for (double v : x) {
        sum += v;
    }
    return sum / static_cast<double>(x.size());
}

double sample_std(std::span<const double> x) {
    require_size(x, 2, "sample_std");
    const double m = sample_mean(x);
    double ss = 0.0;
    for (double v : x) {
        ss += (v - m) * (v - m);
    }
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double sample_median(std::span<const double> x) {
    require_size(x, 1, "sample_median");
    std::vector<double> v(x.begin(), x.end());
    const auto n = v.size();
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (n % 2 == 1) {
        return *mid;
    }
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

double sharpe_annualized(std::span<const double> increments, int periods_per_year) {
    require_size(increments, 2, "sharpe_annualized");
    if (periods_per_year <= 0) {
        throw InvalidArgument("sharpe_annualized: periods_per_year must be > 0");
    }
    const double sd = checked_std(increments, "sharpe_annualized");
    return sample_mean(increments) / sd * std::sqrt(static_cast<double>(periods_per_year));
}

double sharpe_annualized(const PnlSeries& pnl) {
    return sharpe_annualized(pnl.values(), pnl.periods_per_year());
}

double skew_third_moment(std::span<const double> x) {
    require_size(x, 3, "skew_third_moment");
    const double sd = checked_std(x, "skew_third_moment");
    const double m = sample_mean(x);
    double m3 = 0.0;
    for (double v : x) {
        const double d = v - m;
        m3 += d * d * d;
    }
    const auto n = static_cast<double>(x.size());
    m3 /= n;
    return n * n / ((n - 1.0) * (n - 2.0)) * m3 / (sd * sd * sd);
}

double skew_third_moment(const PnlSeries& pnl) { return skew_third_moment(pnl.values()); }

double pearson_median_skew(std::span<const double> x) {
    require_size(x, 3, "pearson_median_skew");
    const double sd = checked_std(x, "pearson_median_skew");
    return 3.0 * (sample_mean(x) - sample_median(x)) / sd;
}

double l_skewness(std::span<const double> x) {
    require_size(x, 3, "l_skewness");
    checked_std(x, "l_skewness");
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    const auto n = static_cast<double>(v.size());
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto j = static_cast<double>(i);  // number of smaller order statistics
        b0 += v[i];
        b1 += j / (n - 1.0) * v[i];
        b2 += j * (j - 1.0) / ((n - 1.0) * (n - 2.0)) * v[i];
    }
    b0 /= n;
    b1 /= n;
    b2 /= n;
    const double l2 = 2.0 * b1 - b0;
    const double l3 = 6.0 * b2 - 6.0 * b1 + b0;
    return l3 / l2;
}

double skew_low_moment(std::span<const double> x, SkewEstimator estimator) {
    switch (estimator) {
    case SkewEstimator::pearson_median:
        return pearson_median_skew(x);
    case SkewEstimator::l_moment:
        return l_skewness(x);
    case SkewEstimator::third_moment:
        return skew_third_moment(x);
    }
    throw InvalidArgument("skew_low_moment: unknown estimator");
}

double skew_low_moment(const PnlSeries& pnl, SkewEstimator estimator) {
    return skew_low_moment(pnl.values(), estimator);
}

double max_drawdown(std::span<const double> increments) {
    double cum = 0.0;
    double peak = 0.0;
    double worst = 0.0;
    for (double v : increments) {
        cum += v;
        peak = std::max(peak, cum);
        worst = std::max(worst, peak - cum);
    }
    return worst;
}

double max_drawdown(const PnlSeries& pnl) { return max_drawdown(pnl.values()); }

RegressionFit fit_sr_vs_skew(std::span<const SkewSharpePoint> points) {
    if (points.size() < 2) {
        throw InvalidArgument("fit_sr_vs_skew: needs at least 2 points");
    }
    std::vector<SkewSharpePoint> pts(points.begin(), points.end());
    for (const auto& p : pts) {
        if (!std::isfinite(p.skew) || !std::isfinite(p.sharpe)) {
            throw InvalidArgument("fit_sr_vs_skew: non-finite point");
        }
    }
    std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) {
        return l.skew != r.skew ? l.skew < r.skew : l.sharpe < r.sharpe;
    });
    if (pts.front().skew == pts.back().skew) {
        throw DegenerateError("fit_sr_vs_skew: all skew values are equal");
    }
    const auto n = static_cast<double>(pts.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : pts) {
        mx += p.skew;
        my += p.sharpe;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const auto& p : pts) {
        const double dx = p.skew - mx;
        const double dy = p.sharpe - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw DegenerateError("fit_sr_vs_skew: skew values have no spread");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ssr = 0.0;
    for (const auto& p : pts) {
        const double r = p.sharpe - (intercept + slope * p.skew);
        ssr += r * r;
    }
    RegressionFit fit;
    fit.a = intercept;
    fit.b = -slope;
    fit.n_points = pts.size();
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
    if (pts.size() > 2) {
        const double sigma2 = ssr / (n - 2.0);
        fit.stderr_b = std::sqrt(sigma2 / sxx);
        fit.stderr_a = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
    }
    return fit;
}

StrategyStats stats_of(const PnlSeries& pnl, SkewEstimator estimator) {
    const auto x = pnl.values();
    require_size(x, 3, "stats_of");
    StrategyStats s;
    s.sharpe_annual = sharpe_annualized(pnl);
    s.vol_annual = sample_std(x) * std::sqrt(static_cast<double>(pnl.periods_per_year()));
    s.skew_low_moment = skew_low_moment(x, estimator);
    s.skew_third_moment = skew_third_moment(x);
    s.max_drawdown = max_drawdown(x);
    s.n_periods = x.size();
    return s;
}

}  // namespace trendskew
