#pragma once

#include "trendskew/series.hpp"
#include "trendskew/stats.hpp"

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace trendskew {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_number(double x);

/// `date,pnl,cum_pnl` rows for cumulative-performance plots.
std::string pnl_to_csv(const PnlSeries& pnl);

// Keys are emitted in a fixed order:
//   stats: sharpe_annual, vol_annual, skew_low, skew_third, max_dd, n_periods
//   fit:   a, b, stderr_a, stderr_b, r2, n_points
nlohmann::ordered_json to_json(const StrategyStats& s);
nlohmann::ordered_json to_json(const RegressionFit& f);

/// Writes `text` verbatim (binary mode, no newline translation).
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Two-space indented dump with a trailing newline.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace trendskew
