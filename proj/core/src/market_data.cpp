#include "trendskew/market_data.hpp"

#include "trendskew/errors.hpp"
#include "trendskew/report.hpp"
#include "trendskew/rng.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace trendskew {

namespace {

void require(bool ok, const char* message) {
    if (!ok) {
        throw InvalidArgument(message);
    }
}

// Shared path construction:
//   log(price(t) / s0) = (drift - vol^2/2) * t / ppy + sum of the first t shocks.
// The deterministic part is evaluated in closed form so zero-vol paths are
// exactly s0 * exp(drift * t / ppy); shocks accumulate in log space so prices
// stay positive.
template <typename Shock>
PriceSeries build_path(const GbmParams& p, std::string contract_id, Shock&& shock) {
    const double mu = p.drift_annual - 0.5 * p.vol_annual * p.vol_annual;
    const double ppy = p.periods_per_year;
    std::vector<double> prices(p.n_periods);
    prices[0] = p.s0;
    double cum = 0.0;
    for (std::size_t t = 1; t < p.n_periods; ++t) {
        cum += shock(t - 1);
        prices[t] = p.s0 * std::exp(mu * static_cast<double>(t) / ppy + cum);
    }
    return PriceSeries(std::move(contract_id), synthetic_calendar(p.n_periods, p.periods_per_year),
                       std::move(prices), p.periods_per_year);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

void validate(const GbmParams& p) {
    require(std::isfinite(p.drift_annual), "GbmParams: drift_annual must be finite");
    require(std::isfinite(p.vol_annual) && p.vol_annual >= 0.0,
            "GbmParams: vol_annual must be finite and >= 0");
    require(std::isfinite(p.s0) && p.s0 > 0.0, "GbmParams: s0 must be finite and > 0");
    require(p.n_periods >= 1, "GbmParams: n_periods must be >= 1");
    require(p.periods_per_year > 0, "GbmParams: periods_per_year must be > 0");
}

void validate(const JumpParams& p) {
    validate(p.base);
    require(std::isfinite(p.jump_intensity_annual) && p.jump_intensity_annual >= 0.0,
            "JumpParams: jump_intensity_annual must be finite and >= 0");
    require(p.jump_intensity_annual / p.base.periods_per_year <= 1.0,
            "JumpParams: jump_intensity_annual / periods_per_year must not exceed 1");
    require(std::isfinite(p.jump_mean_log), "JumpParams: jump_mean_log must be finite");
    require(std::isfinite(p.jump_std_log) && p.jump_std_log >= 0.0,
            "JumpParams: jump_std_log must be finite and >= 0");
}

void validate(const TrendyParams& p) {
    validate(p.base);
    require(std::isfinite(p.drift_state_vol_annual) && p.drift_state_vol_annual >= 0.0,
            "TrendyParams: drift_state_vol_annual must be finite and >= 0");
    require(std::isfinite(p.drift_persistence_halflife_days) &&
                p.drift_persistence_halflife_days > 0.0,
            "TrendyParams: drift_persistence_halflife_days must be > 0");
}

PriceSeries gen_gbm(const GbmParams& p, std::string contract_id) {
    validate(p);
    const double sqrt_dt = std::sqrt(1.0 / p.periods_per_year);
    const CounterRng diffusion(derive_seed(p.seed, "diffusion"));
    return build_path(p, std::move(contract_id), [&](std::size_t k) {
        return p.vol_annual * sqrt_dt * diffusion.normal(k);
    });
}

PriceSeries gen_jump_diffusion(const JumpParams& p, std::string contract_id) {
    validate(p);
    const GbmParams& b = p.base;
    const double dt = 1.0 / b.periods_per_year;
    const double sqrt_dt = std::sqrt(dt);
    const double jump_prob = p.jump_intensity_annual * dt;
    const CounterRng diffusion(derive_seed(b.seed, "diffusion"));
    const CounterRng arrivals(derive_seed(b.seed, "jump-arrival"));
    const CounterRng sizes(derive_seed(b.seed, "jump-size"));
    return build_path(b, std::move(contract_id), [&](std::size_t k) {
        double x = b.vol_annual * sqrt_dt * diffusion.normal(k);
        if (jump_prob > 0.0 && arrivals.uniform(k) < jump_prob) {
            x += p.jump_mean_log + p.jump_std_log * sizes.normal(k);
        }
        return x;
    });
}

PriceSeries gen_trendy(const TrendyParams& p, std::string contract_id) {
    validate(p);
    const GbmParams& b = p.base;
    const double dt = 1.0 / b.periods_per_year;
    const double sqrt_dt = std::sqrt(dt);
    const double phi = std::exp2(-1.0 / p.drift_persistence_halflife_days);
    const double innovation = p.drift_state_vol_annual * std::sqrt(1.0 - phi * phi);
    const CounterRng diffusion(derive_seed(b.seed, "diffusion"));
    const CounterRng latent(derive_seed(b.seed, "latent-drift"));
    // Start in the stationary distribution.
    double state = p.drift_state_vol_annual * latent.normal(0);
    return build_path(b, std::move(contract_id), [&](std::size_t k) {
        if (k > 0) {
            state = phi * state + innovation * latent.normal(k);
        }
        return state * dt + b.vol_annual * sqrt_dt * diffusion.normal(k);
    });
}

PriceSeries parse_price_csv(std::string_view text, const std::string& source,
                            std::optional<int> periods_per_year, std::string contract_id) {
    using Kind = CsvError::Kind;
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    std::vector<Date> dates;
    std::vector<double> prices;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        line = trim(line);
        if (!header_seen) {
            if (line != "date,price") {
                throw CsvError(Kind::malformed_row, source, line_no,
                               source + ":" + std::to_string(line_no) +
                                   ": expected header 'date,price'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            throw CsvError(Kind::malformed_row, source, line_no,
                           source + ":" + std::to_string(line_no) + ": expected two fields");
        }
        const auto date_text = trim(line.substr(0, comma));
        const auto price_text = trim(line.substr(comma + 1));
        const auto date = parse_iso_date(date_text);
        double price = 0.0;
        const auto [ptr, ec] =
            std::from_chars(price_text.data(), price_text.data() + price_text.size(), price);
        if (!date || price_text.empty() || ec != std::errc{} ||
            ptr != price_text.data() + price_text.size() || !std::isfinite(price)) {
            throw CsvError(Kind::malformed_row, source, line_no,
                           source + ":" + std::to_string(line_no) + ": malformed row '" +
                               std::string(line) + "'");
        }
        if (!dates.empty() && *date <= dates.back()) {
            throw CsvError(Kind::non_increasing_dates, source, line_no,
                           source + ":" + std::to_string(line_no) + ": date " +
                               std::string(date_text) + " does not increase");
        }
        if (price <= 0.0) {
            throw CsvError(Kind::non_positive_price, source, line_no,
                           source + ":" + std::to_string(line_no) + ": non-positive price " +
                               std::string(price_text));
        }
        dates.push_back(*date);
        prices.push_back(price);
    }
    if (!header_seen) {
        throw CsvError(Kind::malformed_row, source, 1, source + ": empty file");
    }
    if (dates.empty()) {
        throw CsvError(Kind::malformed_row, source, line_no, source + ": no data rows");
    }
    const int ppy = periods_per_year.value_or(infer_periods_per_year(dates));
    if (ppy <= 0) {
        throw InvalidArgument("load_csv: periods_per_year override must be positive");
    }
    return PriceSeries(std::move(contract_id), std::move(dates), std::move(prices), ppy);
}

PriceSeries load_csv(const std::filesystem::path& path, std::optional<int> periods_per_year,
                     std::optional<std::string> contract_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CsvError(CsvError::Kind::missing_file, path.string(), 0,
                       path.string() + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_price_csv(buf.str(), path.string(), periods_per_year,
                           contract_id.value_or(path.stem().string()));
}

std::string to_csv(const PriceSeries& series) {
    std::string out = "date,price\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += format_iso_date(series.dates()[i]);
        out += ',';
        out += format_number(series.prices()[i]);
        out += '\n';
    }
    return out;
}

void write_csv(const PriceSeries& series, const std::filesystem::path& path) {
    write_text_file(path, to_csv(series));
}

}  // namespace trendskew
