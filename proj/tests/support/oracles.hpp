#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks (brute force, quadrature, finite
// differences, long-double arithmetic).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace trendskew::oracle {

/// Black-Scholes value by integrating the discounted payoff against the
/// lognormal terminal density (in standard-normal coordinates).
inline double lognormal_quadrature_price(double spot, double strike, double vol, double tau,
                                         double rate, bool is_call) {
    const double sd = vol * std::sqrt(tau);
    const double mu = std::log(spot) + (rate - 0.5 * vol * vol) * tau;
    const double kink = (std::log(strike) - mu) / sd;
    auto density = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); };
    auto payoff = [&](double z) {
        const double st = std::exp(mu + sd * z);
        return (is_call ? std::max(st - strike, 0.0) : std::max(strike - st, 0.0)) * density(z);
    };
    using boost::math::quadrature::gauss_kronrod;
    constexpr double reach = 12.0;
    double integral = 0.0;
    if (is_call) {
        const double lo = std::max(kink, -reach);
        const double hi = std::max(kink, 0.0) + reach;
        integral = gauss_kronrod<double, 61>::integrate(payoff, lo, hi, 15, 1e-14);
    } else {
        const double hi = std::min(kink, reach);
        const double lo = std::min(kink, 0.0) - reach;
        integral = gauss_kronrod<double, 61>::integrate(payoff, lo, hi, 15, 1e-14);
    }
    return std::exp(-rate * tau) * integral;
}

/// Central finite difference of f at x with step h.
template <typename F>
double central_difference(F f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// max over all (peak, trough) pairs with peak <= trough of cum[peak] - cum[trough],
/// with cum[0] = 0 before the first increment.
inline double brute_force_drawdown(std::span<const double> increments) {
    std::vector<double> cum{0.0};
    for (double v : increments) {
        cum.push_back(cum.back() + v);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < cum.size(); ++i) {
        for (std::size_t j = i; j < cum.size(); ++j) {
            worst = std::max(worst, cum[i] - cum[j]);
        }
    }
    return worst;
}

/// mean / std(n-1) * sqrt(ppy) in long double.
inline double two_pass_sharpe(std::span<const double> x, int periods_per_year) {
    long double sum = 0.0L;
    for (double v : x) {
        sum += v;
    }
    const long double mean = sum / x.size();
    long double ss = 0.0L;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    const long double sd = std::sqrt(ss / (x.size() - 1));
    return static_cast<double>(mean / sd * std::sqrt(static_cast<long double>(periods_per_year)));
}

/// L-skewness from its definition over all ordered triples and pairs:
/// lambda2 = E[X(2:2) - X(1:2)] / 2, lambda3 = E[X(3:3) - 2 X(2:3) + X(1:3)] / 3.
inline double brute_force_l_skewness(std::span<const double> x) {
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    long double l2 = 0.0L;
    long double pairs = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            l2 += v[j] - v[i];
            pairs += 1.0L;
        }
    }
    long double l3 = 0.0L;
    long double triples = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                l3 += v[k] - 2.0L * v[j] + v[i];
                triples += 1.0L;
            }
        }
    }
    const long double lambda2 = l2 / pairs / 2.0L;
    const long double lambda3 = l3 / triples / 3.0L;
    return static_cast<double>(lambda3 / lambda2);
}

struct LineFit {
    double intercept;
    double slope;
};

/// Least squares through the 2x2 normal equations (raw sums, Cramer's rule).
inline LineFit normal_equations_fit(std::span<const double> x, std::span<const double> y) {
    long double n = x.size();
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    const long double det = n * sxx - sx * sx;
    const long double slope = (n * sxy - sx * sy) / det;
    const long double intercept = (sxx * sy - sx * sxy) / det;
    return {static_cast<double>(intercept), static_cast<double>(slope)};
}

}  // namespace trendskew::oracle
