#pragma once

#include "trendskew/cli/config.hpp"
#include "trendskew/market_data.hpp"
#include "trendskew/options_lab.hpp"
#include "trendskew/stats.hpp"
#include "trendskew/trend_engine.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace trendskew::cli {

/// Process exit statuses.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,  // I/O and other unexpected failures
    exit_config = 2,
    exit_data = 3,
    exit_numerical = 4,
};

/// Flags shared by every subcommand. `seed` and `skew_estimator` override
/// the config file.
struct CommonOptions {
    std::filesystem::path config;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<SkewEstimator> skew_estimator;
};

/// One price-series source: a CSV file or a generator.
struct SourceSpec {
    enum class Kind { csv, gbm, jump, trendy };

    std::string label;
    Kind kind = Kind::gbm;
    std::filesystem::path csv_path;
    std::optional<int> periods_per_year;  // csv override
    GbmParams gbm;                        // also the base of jump/trendy
    JumpParams jump;
    TrendyParams trendy;
};

struct TrendRunConfig {
    std::uint64_t seed = 0;
    SkewEstimator skew_estimator = SkewEstimator::pearson_median;
    TrendConfig trend;
    bool renormalize = true;
    std::vector<SourceSpec> sources;  // expanded: one entry per contract
};

struct StrangleRunConfig {
    std::uint64_t seed = 0;
    SkewEstimator skew_estimator = SkewEstimator::pearson_median;
    StrangleSpec base;
    std::vector<double> taus_years;
    std::vector<MarketCase> markets;
    std::size_t n_paths = 1;
};

struct RegressRunConfig {
    std::filesystem::path input;
};

struct SynthRunConfig {
    std::uint64_t seed = 0;
    SourceSpec source;
};

// Parsing validates every numeric field before anything is computed and
// throws ConfigError anchored to the offending line.
TrendRunConfig parse_trend_config(const ConfigDocument& doc, const CommonOptions& opts);
StrangleRunConfig parse_strangle_config(const ConfigDocument& doc, const CommonOptions& opts);
RegressRunConfig parse_regress_config(const ConfigDocument& doc, const CommonOptions& opts);
SynthRunConfig parse_synth_config(const ConfigDocument& doc, const CommonOptions& opts);

/// Materializes a generator or CSV source.
PriceSeries load_source(const SourceSpec& source);

/// Reads `label,skew,sharpe` columns (in any order, extra columns ignored).
std::vector<SkewSharpePoint> read_scatter_csv(const std::filesystem::path& path);

int cmd_trend(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_strangle(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_regress(const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const CommonOptions& opts, std::ostream& out, std::ostream& err);

/// Dispatches by subcommand name ("trend", "strangle", "regress", "synth").
int run_command(const std::string& name, const CommonOptions& opts, std::ostream& out,
                std::ostream& err);

}  // namespace trendskew::cli
