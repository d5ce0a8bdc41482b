#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trendskew {

using Date = std::chrono::sys_days;

/// Parses a strict `YYYY-MM-DD` date. Returns nullopt on any deviation,
/// including impossible calendar dates such as 2021-02-30.
std::optional<Date> parse_iso_date(std::string_view text);

std::string format_iso_date(Date d);

/// First date of every synthetic calendar (a Monday).
Date synthetic_epoch();

/// Dates for a synthetic series of `n` periods. Series with at least 200
/// periods per year step over weekdays; coarser series step by
/// round(365.25 / periods_per_year) calendar days.
std::vector<Date> synthetic_calendar(std::size_t n, int periods_per_year,
                                     Date start = synthetic_epoch());

/// Periods per year implied by the median spacing of `dates`:
/// <= 3 days -> 252, <= 10 days -> 52, <= 45 days -> 12, otherwise
/// round(365.25 / median). Fewer than two dates gives 252.
int infer_periods_per_year(std::span<const Date> dates);

}  // namespace trendskew
