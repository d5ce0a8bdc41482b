#include "trendskew/series.hpp"

#include "trendskew/errors.hpp"

#include <cmath>
#include <string>

namespace trendskew {

namespace {

void check_dates(std::span<const Date> dates, const char* what) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] <= dates[i - 1]) {
            throw InvalidArgument(std::string(what) + ": dates must be strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
    }
}

}  // namespace

PriceSeries::PriceSeries(std::string contract_id, std::vector<Date> dates,
                         std::vector<double> prices, int periods_per_year)
    : contract_id_(std::move(contract_id)),
      dates_(std::move(dates)),
      prices_(std::move(prices)),
      periods_per_year_(periods_per_year) {
    if (dates_.size() != prices_.size()) {
        throw InvalidArgument("PriceSeries: dates and prices differ in length");
    }
    if (periods_per_year_ <= 0) {
        throw InvalidArgument("PriceSeries: periods_per_year must be positive");
    }
    check_dates(dates_, "PriceSeries");
    for (std::size_t i = 0; i < prices_.size(); ++i) {
        if (!std::isfinite(prices_[i]) || prices_[i] <= 0.0) {
            throw InvalidArgument("PriceSeries: price at index " + std::to_string(i) +
                                  " is not finite and positive");
        }
    }
}

PriceSeries PriceSeries::truncated(std::size_t n) const {
    if (n > size()) {
        throw InvalidArgument("PriceSeries::truncated: n exceeds series length");
    }
    const auto end = static_cast<std::ptrdiff_t>(n);
    return PriceSeries(contract_id_, {dates_.begin(), dates_.begin() + end},
                       {prices_.begin(), prices_.begin() + end}, periods_per_year_);
}

PnlSeries::PnlSeries(std::vector<Date> dates, std::vector<double> values, int periods_per_year)
    : dates_(std::move(dates)), values_(std::move(values)), periods_per_year_(periods_per_year) {
    if (dates_.size() != values_.size()) {
        throw InvalidArgument("PnlSeries: dates and values differ in length");
    }
    if (periods_per_year_ <= 0) {
        throw InvalidArgument("PnlSeries: periods_per_year must be positive");
    }
    check_dates(dates_, "PnlSeries");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw InvalidArgument("PnlSeries: non-finite increment at index " + std::to_string(i));
        }
    }
}

std::vector<double> PnlSeries::cumulative() const {
    std::vector<double> out(values_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        running += values_[i];
        out[i] = running;
    }
    return out;
}

PnlSeries PnlSeries::scaled(double factor) const {
    std::vector<double> v(values_);
    for (double& x : v) {
        x *= factor;
    }
    return PnlSeries(dates_, std::move(v), periods_per_year_);
}

}  // namespace trendskew
