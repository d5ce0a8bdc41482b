#include "trendskew/report.hpp"

#include "trendskew/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>

namespace trendskew {

std::string format_number(double x) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) {
        throw Error("format_number: conversion failed");
    }
    return std::string(buf.data(), ptr);
}

std::string pnl_to_csv(const PnlSeries& pnl) {
    std::string out = "date,pnl,cum_pnl\n";
    const auto cum = pnl.cumulative();
    for (std::size_t i = 0; i < pnl.size(); ++i) {
        out += format_iso_date(pnl.dates()[i]);
        out += ',';
        out += format_number(pnl.values()[i]);
        out += ',';
        out += format_number(cum[i]);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const StrategyStats& s) {
    nlohmann::ordered_json j;
    j["sharpe_annual"] = s.sharpe_annual;
    j["vol_annual"] = s.vol_annual;
    j["skew_low"] = s.skew_low_moment;
    j["skew_third"] = s.skew_third_moment;
    j["max_dd"] = s.max_drawdown;
    j["n_periods"] = s.n_periods;
    return j;
}

nlohmann::ordered_json to_json(const RegressionFit& f) {
    nlohmann::ordered_json j;
    j["a"] = f.a;
    j["b"] = f.b;
    j["stderr_a"] = f.stderr_a;
    j["stderr_b"] = f.stderr_b;
    j["r2"] = f.r_squared;
    j["n_points"] = f.n_points;
    return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace trendskew
