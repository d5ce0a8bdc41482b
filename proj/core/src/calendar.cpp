#include "trendskew/calendar.hpp"

#include "trendskew/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace trendskew {

namespace {

bool parse_digits(std::string_view text, int& out) {
    for (char c : text) {
        if (c < '0' || c > '9') {
            return false;
        }
    }
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    int y = 0;
    int m = 0;
    int d = 0;
    if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
        !parse_digits(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return Date{ymd};
}

std::string format_iso_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

Date synthetic_epoch() {
    using namespace std::chrono;
    return Date{year{1900} / January / 1};
}

std::vector<Date> synthetic_calendar(std::size_t n, int periods_per_year, Date start) {
    if (periods_per_year <= 0) {
        throw InvalidArgument("synthetic_calendar: periods_per_year must be positive");
    }
    std::vector<Date> out;
    out.reserve(n);
    Date current = start;
    if (periods_per_year >= 200) {
        const std::chrono::weekday first{current};
        if (first == std::chrono::Saturday) {
            current += std::chrono::days{2};
        } else if (first == std::chrono::Sunday) {
            current += std::chrono::days{1};
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(current);
            const std::chrono::weekday wd{current};
            current += std::chrono::days{wd == std::chrono::Friday ? 3 : 1};
        }
        return out;
    }
    const auto step = std::max<long>(1, std::lround(365.25 / periods_per_year));
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(current);
        current += std::chrono::days{step};
    }
    return out;
}

int infer_periods_per_year(std::span<const Date> dates) {
    if (dates.size() < 2) {
        return 252;
    }
    std::vector<long> gaps;
    gaps.reserve(dates.size() - 1);
    for (std::size_t i = 1; i < dates.size(); ++i) {
        gaps.push_back((dates[i] - dates[i - 1]).count());
    }
    const auto mid = gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2);
    std::nth_element(gaps.begin(), mid, gaps.end());
    double median = static_cast<double>(*mid);
    if (gaps.size() % 2 == 0) {
        const long lower = *std::max_element(gaps.begin(), mid);
        median = 0.5 * (median + static_cast<double>(lower));
    }
    if (median <= 3.0) {
        return 252;
    }
    if (median <= 10.0) {
        return 52;
    }
    if (median <= 45.0) {
        return 12;
    }
    return std::max(1, static_cast<int>(std::lround(365.25 / median)));
}

}  // namespace trendskew
