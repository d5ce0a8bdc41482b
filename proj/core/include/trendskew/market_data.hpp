#pragma once

#include "trendskew/series.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace trendskew {

/// Geometric Brownian motion. `drift_annual` is the arithmetic drift: the
/// log-step is (drift - vol^2/2) dt + vol sqrt(dt) z.
struct GbmParams {
    double drift_annual = 0.0;
    double vol_annual = 0.2;
    double s0 = 100.0;
    std::size_t n_periods = 252;  // number of prices, s0 included
    int periods_per_year = 252;
    std::uint64_t seed = 0;
};

/// GBM plus Bernoulli(intensity * dt) log-jumps drawn N(mean, std) each period.
struct JumpParams {
    GbmParams base;
    double jump_intensity_annual = 0.0;
    double jump_mean_log = 0.0;
    double jump_std_log = 0.0;
};

/// GBM whose drift carries a stationary AR(1) component with the given
/// half-life (in periods) and stationary annual standard deviation.
struct TrendyParams {
    GbmParams base;
    double drift_state_vol_annual = 0.0;
    double drift_persistence_halflife_days = 100.0;
};

void validate(const GbmParams& p);
void validate(const JumpParams& p);
void validate(const TrendyParams& p);

PriceSeries gen_gbm(const GbmParams& p, std::string contract_id = "gbm");
PriceSeries gen_jump_diffusion(const JumpParams& p, std::string contract_id = "jump");
PriceSeries gen_trendy(const TrendyParams& p, std::string contract_id = "trendy");

/// Reads a `date,price` file (LF or CRLF, optional UTF-8 BOM). The contract id
/// defaults to the file stem; periods per year is inferred from the median
/// date spacing unless overridden. Throws CsvError.
PriceSeries load_csv(const std::filesystem::path& path,
                     std::optional<int> periods_per_year = std::nullopt,
                     std::optional<std::string> contract_id = std::nullopt);

/// Parses CSV text; `source` names the input in error messages.
PriceSeries parse_price_csv(std::string_view text, const std::string& source,
                            std::optional<int> periods_per_year = std::nullopt,
                            std::string contract_id = "series");

/// `date,price` text with shortest round-trip number formatting, LF endings.
std::string to_csv(const PriceSeries& series);
void write_csv(const PriceSeries& series, const std::filesystem::path& path);

}  // namespace trendskew
