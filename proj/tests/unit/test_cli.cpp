#include "trendskew/cli/commands.hpp"
#include "trendskew/cli/config.hpp"
#include "trendskew/errors.hpp"
#include "trendskew/market_data.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace trendskew;
using namespace trendskew::cli;
namespace fs = std::filesystem;

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / "trendskew_cli_tests" / info->name();
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }

    fs::path write(const std::string& name, const std::string& body) const {
        const auto path = dir_ / name;
        fs::create_directories(path.parent_path());
        std::ofstream(path, std::ios::binary) << body;
        return path;
    }

    RunResult run(const std::string& command, const fs::path& config, const std::string& out_sub = "out",
            std::optional<std::uint64_t> seed = std::nullopt,
            std::optional<SkewEstimator> est = std::nullopt) const {
        CommonOptions opts;
        opts.config = config;
        opts.out_dir = dir_ / out_sub;
        opts.seed = seed;
        opts.skew_estimator = est;
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_command(command, opts, out, err);
        return {code, out.str(), err.str()};
    }

    std::string read(const std::string& rel) const {
        std::ifstream in(dir_ / rel, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }

    bool exists(const std::string& rel) const { return fs::exists(dir_ / rel); }

    fs::path dir_;
};

const char* kTrendySingle = R"({
  "schema_version": 1,
  "seed": 42,
  "trend": {"warmup_periods": 100},
  "sources": [
    {"label": "t", "generator": "trendy",
     "params": {"vol_annual": 0.15, "n_periods": 3000,
                "drift_state_vol_annual": 0.1, "drift_persistence_halflife_days": 100}}
  ]
})";

const char* kStrangleOnePoint = R"({
  "schema_version": 1,
  "seed": 3,
  "strangle": {"n_strikes": 3, "vol_premium": 0.1},
  "taus_months": [3],
  "n_paths": 2,
  "markets": [
    {"label": "crash", "model": "jump",
     "params": {"vol_annual": 0.15, "n_periods": 200,
                "jump_intensity_annual": 3, "jump_mean_log": -0.08, "jump_std_log": 0.02}}
  ]
})";

// ---- trend ----

TEST_F(CliTest, TrendWritesArtifactsAndIsDeterministic) {
    const auto cfg = write("trend.json", kTrendySingle);
    const auto first = run("trend", cfg, "a");
    ASSERT_EQ(first.code, exit_ok) << first.err;
    EXPECT_EQ(first.out.rfind("sharpe_annual ", 0), 0u);
    const auto second = run("trend", cfg, "b");
    ASSERT_EQ(second.code, exit_ok);
    EXPECT_EQ(first.out, second.out);
    for (const char* f : {"pnl_t.csv", "aggregate.csv", "stats.json"}) {
        ASSERT_TRUE(exists(std::string("a/") + f)) << f;
        EXPECT_EQ(read(std::string("a/") + f), read(std::string("b/") + f)) << f;
    }
    const auto csv = read("a/pnl_t.csv");
    EXPECT_EQ(csv.rfind("date,pnl,cum_pnl\n", 0), 0u);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3001);

    const auto stats = nlohmann::ordered_json::parse(read("a/stats.json"));
    std::vector<std::string> keys;
    for (const auto& [k, _] : stats["aggregate"].items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"sharpe_annual", "vol_annual", "skew_low",
                                              "skew_third", "max_dd", "n_periods"}));
    EXPECT_NEAR(stats["aggregate"]["vol_annual"].get<double>(), 1.0, 1e-10);
    EXPECT_TRUE(stats["contracts"].contains("t"));
}

TEST_F(CliTest, TrendSeedOverrideChangesResult) {
    const auto cfg = write("trend.json", kTrendySingle);
    ASSERT_EQ(run("trend", cfg, "a").code, exit_ok);
    ASSERT_EQ(run("trend", cfg, "b", 43).code, exit_ok);
    EXPECT_NE(read("a/aggregate.csv"), read("b/aggregate.csv"));
    ASSERT_EQ(run("trend", cfg, "c", std::nullopt, SkewEstimator::third_moment).code, exit_ok);
    EXPECT_EQ(read("a/aggregate.csv"), read("c/aggregate.csv"));
    EXPECT_NE(read("a/stats.json"), read("c/stats.json"));
}

TEST_F(CliTest, TrendWithZeroSourcesIsConfigError) {
    const auto cfg = write("trend.json", "{\n  \"schema_version\": 1,\n  \"sources\": []\n}\n");
    const auto r = run("trend", cfg);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("trend.json:3:"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("at least one"), std::string::npos);
}

TEST_F(CliTest, TrendReadsCsvSources) {
    GbmParams g;
    g.n_periods = 800;
    g.seed = 5;
    fs::create_directories(dir_ / "data");
    write_csv(gen_gbm(g), dir_ / "data" / "es.csv");
    const auto cfg = write("trend.json", R"({
      "schema_version": 1,
      "sources": [{"label": "es", "csv": "data/es.csv"}]
    })");
    const auto r = run("trend", cfg);
    ASSERT_EQ(r.code, exit_ok) << r.err;
    EXPECT_TRUE(exists("out/pnl_es.csv"));
}

TEST_F(CliTest, TrendDataErrorsExitThree) {
    write("data/bad.csv", "date,price\n2020-01-02,100\n2020-01-03,-1\n");
    const auto bad = write("bad.json", R"({"schema_version": 1,
      "sources": [{"label": "bad", "csv": "data/bad.csv"}]})");
    auto r = run("trend", bad);
    EXPECT_EQ(r.code, exit_data);
    EXPECT_NE(r.err.find("bad.csv:3"), std::string::npos) << r.err;

    write("data/short.csv", "date,price\n2020-01-02,100\n2020-01-03,101\n2020-01-06,102\n");
    const auto short_cfg = write("short.json", R"({"schema_version": 1,
      "trend": {"warmup_periods": 10},
      "sources": [{"label": "s", "csv": "data/short.csv"}]})");
    r = run("trend", short_cfg);
    EXPECT_EQ(r.code, exit_data) << r.err;
}

TEST_F(CliTest, TrendDegenerateAggregateExitsFour) {
    write("data/flat.csv", "date,price\n2020-01-02,100\n2020-01-03,100\n2020-01-06,100\n"
                           "2020-01-07,100\n2020-01-08,100\n");
    const auto cfg = write("flat.json", R"({"schema_version": 1,
      "sources": [{"label": "flat", "csv": "data/flat.csv"}]})");
    EXPECT_EQ(run("trend", cfg).code, exit_numerical);
}

TEST_F(CliTest, TrendCountExpandsLabels) {
    const auto cfg = write("trend.json", R"({"schema_version": 1, "seed": 1,
      "sources": [{"label": "g", "generator": "gbm", "count": 12,
                   "params": {"n_periods": 300}}]})");
    ASSERT_EQ(run("trend", cfg).code, exit_ok);
    EXPECT_TRUE(exists("out/pnl_g_00.csv"));
    EXPECT_TRUE(exists("out/pnl_g_11.csv"));
    EXPECT_NE(read("out/pnl_g_00.csv"), read("out/pnl_g_01.csv"));
}

// ---- config validation ----

TEST_F(CliTest, ConfigErrorsAreLineAnchored) {
    const auto unknown = write("unknown.json", "{\n  \"schema_version\": 1,\n  \"sorces\": []\n}\n");
    auto r = run("trend", unknown);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("unknown.json:3:"), std::string::npos) << r.err;

    const auto version = write("version.json", "{\n  \"schema_version\": 2\n}\n");
    r = run("synth", version);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("version.json:2:"), std::string::npos) << r.err;

    const auto broken = write("broken.json", "{\n  \"schema_version\": 1,\n  \"seed\": ,\n}\n");
    r = run("trend", broken);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("broken.json:3:"), std::string::npos) << r.err;

    const auto negative = write("negative.json", R"({
  "schema_version": 1,
  "source": {"label": "x", "generator": "gbm",
             "params": {
               "n_periods": 10,
               "vol_annual": -0.2}}
})");
    r = run("synth", negative);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("negative.json:6:"), std::string::npos) << r.err;

    r = run("trend", dir_ / "absent.json");
    EXPECT_EQ(r.code, exit_config);

    r = run("nonsense", unknown);
    EXPECT_EQ(r.code, exit_config);
}

TEST_F(CliTest, TrendRejectsMissingCsvAtValidation) {
    const auto cfg = write("trend.json", R"({"schema_version": 1,
      "sources": [{"label": "x", "csv": "nope.csv"}]})");
    const auto r = run("trend", cfg);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_FALSE(exists("out"));
}

TEST_F(CliTest, LocatesJsonPointersToLines) {
    const auto lines = locate_json_lines("{\n \"a\": {\n  \"b\": [\n   1,\n   {\"c\": 2}\n  ]\n }\n}\n");
    EXPECT_EQ(lines.at("/a"), 2u);
    EXPECT_EQ(lines.at("/a/b"), 3u);
    EXPECT_EQ(lines.at("/a/b/0"), 4u);
    EXPECT_EQ(lines.at("/a/b/1"), 5u);
    EXPECT_EQ(lines.at("/a/b/1/c"), 5u);
}

// ---- strangle ----

TEST_F(CliTest, StrangleSinglePointWritesOneRow) {
    const auto cfg = write("strangle.json", kStrangleOnePoint);
    const auto r = run("strangle", cfg);
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const auto scatter = read("out/scatter.csv");
    EXPECT_EQ(std::count(scatter.begin(), scatter.end(), '\n'), 2);
    EXPECT_EQ(scatter.rfind("label,market,tau_months,skew,sharpe\ncrash_3m,crash,3,", 0), 0u);
    EXPECT_TRUE(exists("out/stats.json"));
    EXPECT_FALSE(exists("out/fit.json"));
}

TEST_F(CliTest, StrangleSweepFitsAndIsDeterministic) {
    const auto cfg = write("strangle.json", R"({
      "schema_version": 1,
      "seed": 3,
      "strangle": {"vol_premium": 0.1},
      "taus_years": [0.25, 0.5],
      "n_paths": 2,
      "markets": [
        {"label": "calm", "model": "gbm", "params": {"vol_annual": 0.1, "n_periods": 150}},
        {"label": "crash", "model": "jump",
         "params": {"vol_annual": 0.15, "n_periods": 150,
                    "jump_intensity_annual": 3, "jump_mean_log": -0.08}}
      ]
    })");
    const auto a = run("strangle", cfg, "a");
    ASSERT_EQ(a.code, exit_ok) << a.err;
    const auto b = run("strangle", cfg, "b");
    EXPECT_EQ(a.out, b.out);
    for (const char* f : {"scatter.csv", "stats.json", "fit.json"}) {
        EXPECT_EQ(read(std::string("a/") + f), read(std::string("b/") + f)) << f;
    }
    const auto fit = nlohmann::ordered_json::parse(read("a/fit.json"));
    std::vector<std::string> keys;
    for (const auto& [k, _] : fit.items()) {
        keys.push_back(k);
    }
    EXPECT_EQ(keys, (std::vector<std::string>{"a", "b", "stderr_a", "stderr_b", "r2", "n_points"}));
    EXPECT_EQ(fit["n_points"].get<int>(), 4);
    EXPECT_NE(a.out.find("a "), std::string::npos);
    EXPECT_NE(a.out.find("\nb "), std::string::npos);
}

TEST_F(CliTest, StrangleRejectsMaturityOutsideRange) {
    std::string text = kStrangleOnePoint;
    text.replace(text.find("\"taus_months\": [3]"), 18, "\"taus_years\": [2.0]");
    const auto cfg = write("strangle.json", text);
    const auto r = run("strangle", cfg);
    EXPECT_EQ(r.code, exit_config);
    EXPECT_NE(r.err.find("[1/12, 1]"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("strangle.json:5:"), std::string::npos) << r.err;
}

TEST_F(CliTest, StrangleRejectsBadGridAndEvenStrikes) {
    std::string even = kStrangleOnePoint;
    even.replace(even.find("\"n_strikes\": 3"), 14, "\"n_strikes\": 4");
    EXPECT_EQ(run("strangle", write("even.json", even)).code, exit_config);

    std::string wide = kStrangleOnePoint;
    wide.replace(wide.find("\"n_strikes\": 3"), 14, "\"n_strikes\": 3, \"strike_width_sigmas\": 40");
    EXPECT_EQ(run("strangle", write("wide.json", wide)).code, exit_config);
}

// ---- regress ----

TEST_F(CliTest, RegressRecoversEquilibriumLine) {
    write("points.csv",
          "label,skew,sharpe\np1,-5,1.5833333333333333\np2,-3,1.0833333333333333\n"
          "p3,-1,0.5833333333333333\np4,0,0.3333333333333333\n");
    const auto cfg = write("regress.json", R"({"schema_version": 1, "input": "points.csv"})");
    const auto r = run("regress", cfg);
    ASSERT_EQ(r.code, exit_ok) << r.err;
    const auto fit = nlohmann::json::parse(read("out/fit.json"));
    EXPECT_NEAR(fit["a"].get<double>(), 1.0 / 3.0, 1e-10);
    EXPECT_NEAR(fit["b"].get<double>(), 0.25, 1e-10);
    EXPECT_NEAR(fit["r2"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, RegressShuffledRowsGiveIdenticalFit) {
    write("a.csv", "label,skew,sharpe\nx,-4.2,1.1\ny,-1.0,0.4\nz,0.5,0.2\nw,-2.5,0.9\nv,-3.1,0.6\n");
    write("b.csv", "sharpe,label,skew,extra\n0.6,v,-3.1,q\n0.2,z,0.5,q\n1.1,x,-4.2,q\n"
                   "0.9,w,-2.5,q\n0.4,y,-1.0,q\n");
    ASSERT_EQ(run("regress", write("a.json", R"({"schema_version":1,"input":"a.csv"})"), "a").code,
              exit_ok);
    ASSERT_EQ(run("regress", write("b.json", R"({"schema_version":1,"input":"b.csv"})"), "b").code,
              exit_ok);
    EXPECT_EQ(read("a/fit.json"), read("b/fit.json"));
}

TEST_F(CliTest, RegressErrorStatuses) {
    write("one.csv", "label,skew,sharpe\nx,-1,0.5\n");
    EXPECT_EQ(run("regress", write("one.json", R"({"schema_version":1,"input":"one.csv"})")).code,
              exit_config);
    write("flat.csv", "label,skew,sharpe\nx,-1,0.5\ny,-1,0.7\n");
    EXPECT_EQ(run("regress", write("flat.json", R"({"schema_version":1,"input":"flat.csv"})")).code,
              exit_numerical);
    write("junk.csv", "label,skew,sharpe\nx,abc,0.5\ny,-1,0.7\n");
    EXPECT_EQ(run("regress", write("junk.json", R"({"schema_version":1,"input":"junk.csv"})")).code,
              exit_data);
    EXPECT_EQ(run("regress", write("none.json", R"({"schema_version":1,"input":"none.csv"})")).code,
              exit_config);
}

// ---- synth ----

TEST_F(CliTest, SynthConstantPriceCsv) {
    const auto cfg = write("synth.json", R"({"schema_version": 1, "seed": 9,
      "source": {"label": "flat", "generator": "gbm",
                 "params": {"vol_annual": 0, "drift_annual": 0, "s0": 50, "n_periods": 20}}})");
    const auto r = run("synth", cfg);
    ASSERT_EQ(r.code, exit_ok) << r.err;
    std::istringstream in(read("out/prices_flat.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "date,price");
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line.substr(line.find(',') + 1), "50");
        ++rows;
    }
    EXPECT_EQ(rows, 20);
}

TEST_F(CliTest, SynthIsByteIdenticalAndRoundTrips) {
    const auto cfg = write("synth.json", R"({"schema_version": 1, "seed": 9,
      "source": {"label": "demo", "generator": "jump",
                 "params": {"n_periods": 1000, "jump_intensity_annual": 10,
                            "jump_mean_log": -0.05, "jump_std_log": 0.02}}})");
    ASSERT_EQ(run("synth", cfg, "a").code, exit_ok);
    ASSERT_EQ(run("synth", cfg, "b").code, exit_ok);
    EXPECT_EQ(read("a/prices_demo.csv"), read("b/prices_demo.csv"));

    const auto doc = ConfigDocument::load(cfg);
    CommonOptions opts;
    opts.config = cfg;
    const auto parsed = parse_synth_config(doc, opts);
    const auto in_memory = load_source(parsed.source);
    const auto reloaded = load_csv(dir_ / "a" / "prices_demo.csv", in_memory.periods_per_year(),
                                   in_memory.contract_id());
    EXPECT_EQ(reloaded, in_memory);
}

TEST_F(CliTest, SynthRejectsInvalidGenerator) {
    const auto cfg = write("synth.json", R"({"schema_version": 1,
      "source": {"label": "x", "generator": "heston", "params": {"n_periods": 10}}})");
    EXPECT_EQ(run("synth", cfg).code, exit_config);
}

TEST_F(CliTest, ShippedConfigsParse) {
    const fs::path configs = TRENDSKEW_CONFIG_DIR;
    CommonOptions opts;
    opts.config = configs / "trend_trendy.json";
    EXPECT_EQ(parse_trend_config(ConfigDocument::load(opts.config), opts).sources.size(), 10u);
    opts.config = configs / "strangle_sweep.json";
    const auto s = parse_strangle_config(ConfigDocument::load(opts.config), opts);
    EXPECT_EQ(s.taus_years.size() * s.markets.size(), 36u);
    opts.config = configs / "synth_gbm.json";
    EXPECT_EQ(parse_synth_config(ConfigDocument::load(opts.config), opts).source.label, "demo");
    opts.config = configs / "regress_line.json";
    const auto rg = parse_regress_config(ConfigDocument::load(opts.config), opts);
    EXPECT_EQ(read_scatter_csv(rg.input).size(), 4u);
}

}  // namespace
