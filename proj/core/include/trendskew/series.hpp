#pragma once

#include "trendskew/calendar.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trendskew {

/// Dated price levels for one contract.
///
/// Invariants (checked on construction, InvalidArgument otherwise): dates
/// strictly increasing, one finite positive price per date, and
/// periods_per_year > 0. Immutable once built.
class PriceSeries {
public:
    PriceSeries(std::string contract_id, std::vector<Date> dates, std::vector<double> prices,
                int periods_per_year);

    const std::string& contract_id() const noexcept { return contract_id_; }
    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> prices() const noexcept { return prices_; }
    int periods_per_year() const noexcept { return periods_per_year_; }
    std::size_t size() const noexcept { return prices_.size(); }

    /// First `n` observations (n <= size()).
    PriceSeries truncated(std::size_t n) const;

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;

private:
    std::string contract_id_;
    std::vector<Date> dates_;
    std::vector<double> prices_;
    int periods_per_year_;
};

/// Dated P&L increments in risk units. Dates strictly increasing, values
/// finite, periods_per_year > 0.
class PnlSeries {
public:
    PnlSeries(std::vector<Date> dates, std::vector<double> values, int periods_per_year);

    std::span<const Date> dates() const noexcept { return dates_; }
    std::span<const double> values() const noexcept { return values_; }
    int periods_per_year() const noexcept { return periods_per_year_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Running sum of the increments.
    std::vector<double> cumulative() const;

    /// Same dates, increments multiplied by `factor`.
    PnlSeries scaled(double factor) const;

    friend bool operator==(const PnlSeries&, const PnlSeries&) = default;

private:
    std::vector<Date> dates_;
    std::vector<double> values_;
    int periods_per_year_;
};

}  // namespace trendskew
