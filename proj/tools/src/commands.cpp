#include "trendskew/cli/commands.hpp"

#include "trendskew/report.hpp"
#include "trendskew/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

namespace trendskew::cli {

namespace fs = std::filesystem;

namespace {

void check_schema(const ConfigNode& root) {
    if (!root.json().is_object()) {
        root.fail("config must be a JSON object");
    }
    const auto version = root.at("schema_version").as_int();
    if (version != 1) {
        root.at("schema_version").fail("unsupported schema_version " + std::to_string(version) +
                                       " (expected 1)");
    }
}

std::uint64_t global_seed(const ConfigNode& root, const CommonOptions& opts) {
    if (opts.seed) {
        return *opts.seed;
    }
    const auto node = root.find("seed");
    return node ? node->as_u64() : 0;
}

SkewEstimator estimator_of(const ConfigNode& root, const CommonOptions& opts) {
    if (opts.skew_estimator) {
        return *opts.skew_estimator;
    }
    const auto node = root.find("skew_estimator");
    if (!node) {
        return SkewEstimator::pearson_median;
    }
    const auto parsed = parse_skew_estimator(node->as_string());
    if (!parsed) {
        node->fail("skew_estimator must be one of pearson, l-moment, third-moment");
    }
    return *parsed;
}

std::string label_of(const ConfigNode& node) {
    const auto label = node.at("label");
    const auto text = label.as_string();
    const bool ok = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
    if (!ok) {
        label.fail("label must be non-empty and use only letters, digits, '_', '-', '.'");
    }
    return text;
}

int positive_int(const ConfigNode& node, std::int64_t lo, const char* what) {
    const auto v = node.as_int();
    if (v < lo || v > std::numeric_limits<int>::max()) {
        node.fail(std::string(what) + " must be an integer >= " + std::to_string(lo));
    }
    return static_cast<int>(v);
}

// Runs a library validator and re-anchors its complaint to `node`, or to
// the member it names when that member is present.
template <typename F>
void validated(const ConfigNode& node, F&& check) {
    try {
        check();
    } catch (const InvalidArgument& e) {
        const std::string what = e.what();
        if (node.json().is_object()) {
            for (const auto& [key, value] : node.json().items()) {
                if (what.find(": " + key + " ") != std::string::npos) {
                    node.at(key).fail(what);
                }
            }
        }
        node.fail(what);
    }
}

GbmParams parse_gbm_block(const ConfigNode& params, std::uint64_t seed) {
    GbmParams g;
    g.drift_annual = params.get_double("drift_annual", 0.0);
    g.vol_annual = params.get_double("vol_annual", 0.2);
    g.s0 = params.get_double("s0", 100.0);
    g.n_periods = static_cast<std::size_t>(
        positive_int(params.at("n_periods"), 1, "n_periods"));
    if (const auto ppy = params.find("periods_per_year")) {
        g.periods_per_year = positive_int(*ppy, 1, "periods_per_year");
    }
    g.seed = seed;
    return g;
}

// Fills `src` from a generator name and its params block. `seed` is used
// unless params.seed is given.
void parse_generator(const ConfigNode& generator, const ConfigNode& params, SourceSpec& src,
                     std::uint64_t seed, bool allow_seed) {
    const auto name = generator.as_string();
    std::uint64_t effective = seed;
    if (const auto s = params.find("seed")) {
        if (!allow_seed) {
            s->fail("per-market seeds are not accepted; paths derive seeds from the global seed");
        }
        effective = s->as_u64();
    }
    if (name == "gbm") {
        params.only_keys({"drift_annual", "vol_annual", "s0", "n_periods", "periods_per_year", "seed"});
        src.kind = SourceSpec::Kind::gbm;
        src.gbm = parse_gbm_block(params, effective);
        validated(params, [&] { validate(src.gbm); });
    } else if (name == "jump") {
        params.only_keys({"drift_annual", "vol_annual", "s0", "n_periods", "periods_per_year", "seed",
                          "jump_intensity_annual", "jump_mean_log", "jump_std_log"});
        src.kind = SourceSpec::Kind::jump;
        src.gbm = parse_gbm_block(params, effective);
        src.jump.base = src.gbm;
        src.jump.jump_intensity_annual = params.get_double("jump_intensity_annual", 0.0);
        src.jump.jump_mean_log = params.get_double("jump_mean_log", 0.0);
        src.jump.jump_std_log = params.get_double("jump_std_log", 0.0);
        validated(params, [&] { validate(src.jump); });
    } else if (name == "trendy") {
        params.only_keys({"drift_annual", "vol_annual", "s0", "n_periods", "periods_per_year", "seed",
                          "drift_state_vol_annual", "drift_persistence_halflife_days"});
        src.kind = SourceSpec::Kind::trendy;
        src.gbm = parse_gbm_block(params, effective);
        src.trendy.base = src.gbm;
        src.trendy.drift_state_vol_annual = params.get_double("drift_state_vol_annual", 0.0);
        src.trendy.drift_persistence_halflife_days =
            params.get_double("drift_persistence_halflife_days", 100.0);
        validated(params, [&] { validate(src.trendy); });
    } else {
        generator.fail("must be one of gbm, jump, trendy");
    }
}

std::vector<SourceSpec> parse_sources(const ConfigNode& root, const ConfigDocument& doc,
                                      std::uint64_t seed) {
    const auto list = root.at("sources");
    const auto items = list.elements();
    if (items.empty()) {
        list.fail("at least one price-series source is required");
    }
    std::vector<SourceSpec> out;
    std::set<std::string> seen;
    for (const auto& item : items) {
        const auto label = label_of(item);
        if (item.has("csv")) {
            item.only_keys({"label", "csv", "periods_per_year"});
            SourceSpec src;
            src.label = label;
            src.kind = SourceSpec::Kind::csv;
            const auto csv = item.at("csv");
            fs::path p = csv.as_string();
            src.csv_path = p.is_absolute() ? p : doc.base_dir() / p;
            if (!fs::is_regular_file(src.csv_path)) {
                csv.fail("price file '" + src.csv_path.string() + "' does not exist");
            }
            if (const auto ppy = item.find("periods_per_year")) {
                src.periods_per_year = positive_int(*ppy, 1, "periods_per_year");
            }
            if (!seen.insert(label).second) {
                item.at("label").fail("duplicate label '" + label + "'");
            }
            out.push_back(std::move(src));
            continue;
        }
        item.only_keys({"label", "generator", "params", "count"});
        const auto count = item.has("count") ? positive_int(item.at("count"), 1, "count") : 1;
        const auto width = std::to_string(count - 1).size();
        for (int i = 0; i < count; ++i) {
            SourceSpec src;
            if (count == 1) {
                src.label = label;
            } else {
                auto idx = std::to_string(i);
                idx.insert(0, width - idx.size(), '0');
                src.label = label + "_" + idx;
            }
            std::uint64_t contract_seed = derive_seed(seed, src.label);
            parse_generator(item.at("generator"), item.at("params"), src, contract_seed, true);
            if (count > 1 && item.at("params").has("seed")) {
                // An explicit seed is a family seed when the block is replicated.
                const auto family = item.at("params").at("seed").as_u64();
                src.gbm.seed = src.jump.base.seed = src.trendy.base.seed =
                    derive_seed(family, src.label);
            }
            if (!seen.insert(src.label).second) {
                item.at("label").fail("duplicate label '" + src.label + "'");
            }
            out.push_back(std::move(src));
        }
    }
    return out;
}

std::string format_plain(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw Error("cannot create output directory '" + dir.string() + "'");
    }
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
            field.remove_prefix(1);
        }
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
            field.remove_suffix(1);
        }
        fields.emplace_back(field);
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

}  // namespace

TrendRunConfig parse_trend_config(const ConfigDocument& doc, const CommonOptions& opts) {
    const auto root = doc.root();
    check_schema(root);
    root.only_keys({"schema_version", "seed", "skew_estimator", "trend", "renormalize", "sources"});
    TrendRunConfig cfg;
    cfg.seed = global_seed(root, opts);
    cfg.skew_estimator = estimator_of(root, opts);
    cfg.renormalize = root.get_bool("renormalize", true);
    if (const auto t = root.find("trend")) {
        t->only_keys({"signal_timescale_months", "vol_halflife_periods", "target_vol_annual",
                      "warmup_periods", "signal_clip"});
        cfg.trend.signal_timescale_months = t->get_double("signal_timescale_months", 5.0);
        if (const auto h = t->find("vol_halflife_periods")) {
            cfg.trend.vol_halflife_periods = positive_int(*h, 2, "vol_halflife_periods");
        }
        cfg.trend.target_vol_annual = t->get_double("target_vol_annual", 1.0);
        if (const auto w = t->find("warmup_periods")) {
            cfg.trend.warmup_periods = positive_int(*w, 0, "warmup_periods");
        }
        if (const auto clip = t->find("signal_clip")) {
            const auto name = clip->as_string();
            if (name == "sign") {
                cfg.trend.signal_clip = SignalClip::sign;
            } else if (name == "linear_clipped") {
                cfg.trend.signal_clip = SignalClip::linear_clipped;
            } else {
                clip->fail("signal_clip must be 'sign' or 'linear_clipped'");
            }
        }
        validated(*t, [&] { validate(cfg.trend); });
    }
    cfg.sources = parse_sources(root, doc, cfg.seed);
    // Generated series must outlast the warmup; CSV lengths are checked on load.
    for (const auto& item : root.at("sources").elements()) {
        if (item.has("csv")) {
            continue;
        }
        const auto n_periods = item.at("params").at("n_periods");
        if (n_periods.as_int() <= cfg.trend.warmup_periods) {
            n_periods.fail("n_periods must exceed trend.warmup_periods (" +
                           std::to_string(cfg.trend.warmup_periods) + ")");
        }
    }
    return cfg;
}

StrangleRunConfig parse_strangle_config(const ConfigDocument& doc, const CommonOptions& opts) {
    const auto root = doc.root();
    check_schema(root);
    root.only_keys({"schema_version", "seed", "skew_estimator", "strangle", "taus_months",
                    "taus_years", "markets", "n_paths"});
    StrangleRunConfig cfg;
    cfg.seed = global_seed(root, opts);
    cfg.skew_estimator = estimator_of(root, opts);

    const auto s = root.at("strangle");
    s.only_keys({"n_strikes", "strike_width_sigmas", "hedge_every_periods", "vol_premium"});
    if (const auto n = s.find("n_strikes")) {
        cfg.base.n_strikes = positive_int(*n, 3, "n_strikes");
        if (cfg.base.n_strikes % 2 == 0) {
            n->fail("n_strikes must be odd so the grid is symmetric around spot");
        }
    }
    cfg.base.strike_width_sigmas = s.get_double("strike_width_sigmas", 1.0);
    if (const auto h = s.find("hedge_every_periods")) {
        cfg.base.hedge_every_periods = positive_int(*h, 1, "hedge_every_periods");
    }
    cfg.base.vol_premium = s.get_double("vol_premium", 0.0);

    if (root.has("taus_months") == root.has("taus_years")) {
        root.fail("give exactly one of taus_months or taus_years");
    }
    const bool months = root.has("taus_months");
    const auto taus = root.at(months ? "taus_months" : "taus_years");
    const auto tau_items = taus.elements();
    if (tau_items.empty()) {
        taus.fail("at least one maturity is required");
    }
    std::vector<ConfigNode> tau_nodes;
    for (const auto& t : tau_items) {
        const double v = t.as_double();
        const double years = months ? v / 12.0 : v;
        if (!(years >= 1.0 / 12.0 - 1e-12 && years <= 1.0 + 1e-12)) {
            t.fail("maturity " + format_plain(v) + (months ? " months" : " years") +
                   " is outside the allowed range [1/12, 1] years (1 to 12 months)");
        }
        cfg.taus_years.push_back(years);
        tau_nodes.push_back(t);
    }

    const auto markets = root.at("markets");
    const auto market_items = markets.elements();
    if (market_items.empty()) {
        markets.fail("at least one market is required");
    }
    std::set<std::string> seen;
    for (const auto& m : market_items) {
        m.only_keys({"label", "model", "params"});
        const auto label = label_of(m);
        if (!seen.insert(label).second) {
            m.at("label").fail("duplicate market label '" + label + "'");
        }
        const auto model = m.at("model");
        const auto name = model.as_string();
        if (name != "gbm" && name != "jump") {
            model.fail("model must be 'gbm' or 'jump'");
        }
        const auto params = m.at("params");
        if (params.at("n_periods").as_int() < 2) {
            params.at("n_periods").fail("n_periods must be >= 2 for option simulation");
        }
        SourceSpec src;
        parse_generator(model, params, src, 0, false);
        MarketCase mc;
        mc.label = label;
        if (name == "gbm") {
            mc.model = src.gbm;
        } else {
            mc.model = src.jump;
        }
        cfg.markets.push_back(std::move(mc));
    }

    const auto n_paths = root.at("n_paths");
    cfg.n_paths = static_cast<std::size_t>(positive_int(n_paths, 1, "n_paths"));

    // Check every (tau, market) combination before any simulation starts.
    for (const auto& mc : cfg.markets) {
        for (std::size_t i = 0; i < cfg.taus_years.size(); ++i) {
            StrangleSpec spec = cfg.base;
            spec.tau_years = cfg.taus_years[i];
            spec.market = mc.model;
            validated(s, [&] { validate(spec); });
            double iv = 0.0;
            validated(markets, [&] { iv = implied_vol(spec); });
            if (spec.strike_width_sigmas * iv * std::sqrt(spec.tau_years) >= 1.0) {
                s.at("strike_width_sigmas")
                    .fail("strike grid reaches non-positive strikes for market '" + mc.label +
                          "' at maturity " + format_plain(spec.tau_years) + " years");
            }
        }
    }
    return cfg;
}

RegressRunConfig parse_regress_config(const ConfigDocument& doc, const CommonOptions&) {
    const auto root = doc.root();
    check_schema(root);
    root.only_keys({"schema_version", "input"});
    RegressRunConfig cfg;
    const auto input = root.at("input");
    fs::path p = input.as_string();
    cfg.input = p.is_absolute() ? p : doc.base_dir() / p;
    if (!fs::is_regular_file(cfg.input)) {
        input.fail("input file '" + cfg.input.string() + "' does not exist");
    }
    return cfg;
}

SynthRunConfig parse_synth_config(const ConfigDocument& doc, const CommonOptions& opts) {
    const auto root = doc.root();
    check_schema(root);
    root.only_keys({"schema_version", "seed", "source"});
    SynthRunConfig cfg;
    cfg.seed = global_seed(root, opts);
    const auto source = root.at("source");
    source.only_keys({"label", "generator", "params"});
    cfg.source.label = label_of(source);
    parse_generator(source.at("generator"), source.at("params"), cfg.source,
                    derive_seed(cfg.seed, cfg.source.label), true);
    return cfg;
}

PriceSeries load_source(const SourceSpec& source) {
    switch (source.kind) {
    case SourceSpec::Kind::csv:
        return load_csv(source.csv_path, source.periods_per_year, source.label);
    case SourceSpec::Kind::gbm:
        return gen_gbm(source.gbm, source.label);
    case SourceSpec::Kind::jump:
        return gen_jump_diffusion(source.jump, source.label);
    case SourceSpec::Kind::trendy:
        return gen_trendy(source.trendy, source.label);
    }
    throw InvalidArgument("load_source: unknown source kind");
}

std::vector<SkewSharpePoint> read_scatter_csv(const fs::path& path) {
    using Kind = CsvError::Kind;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CsvError(Kind::missing_file, path.string(), 0, path.string() + ": cannot open file");
    }
    std::string line;
    std::size_t line_no = 0;
    int skew_col = -1;
    int sharpe_col = -1;
    std::size_t n_cols = 0;
    std::vector<SkewSharpePoint> points;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (skew_col < 0) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (fields[i] == "skew") {
                    skew_col = static_cast<int>(i);
                } else if (fields[i] == "sharpe") {
                    sharpe_col = static_cast<int>(i);
                }
            }
            const bool has_label = std::find(fields.begin(), fields.end(), "label") != fields.end();
            if (skew_col < 0 || sharpe_col < 0 || !has_label) {
                throw CsvError(Kind::malformed_row, path.string(), line_no,
                               path.string() + ":" + std::to_string(line_no) +
                                   ": header must name label, skew and sharpe columns");
            }
            n_cols = fields.size();
            continue;
        }
        auto number = [&](int col, double& out) {
            const auto& f = fields[static_cast<std::size_t>(col)];
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
            return !f.empty() && ec == std::errc{} && ptr == f.data() + f.size() && std::isfinite(out);
        };
        SkewSharpePoint p;
        if (fields.size() != n_cols || !number(skew_col, p.skew) || !number(sharpe_col, p.sharpe)) {
            throw CsvError(Kind::malformed_row, path.string(), line_no,
                           path.string() + ":" + std::to_string(line_no) + ": malformed row");
        }
        points.push_back(p);
    }
    if (skew_col < 0) {
        throw CsvError(Kind::malformed_row, path.string(), 1, path.string() + ": empty file");
    }
    return points;
}

int cmd_trend(const CommonOptions& opts, std::ostream& out, std::ostream&) {
    const auto doc = ConfigDocument::load(opts.config);
    const auto cfg = parse_trend_config(doc, opts);
    ensure_out_dir(opts.out_dir);

    std::vector<PnlSeries> pnls;
    nlohmann::ordered_json contracts = nlohmann::ordered_json::object();
    for (const auto& src : cfg.sources) {
        const auto prices = load_source(src);
        auto pnl = contract_pnl(prices, cfg.trend);
        write_text_file(opts.out_dir / ("pnl_" + src.label + ".csv"), pnl_to_csv(pnl));
        contracts[src.label] = to_json(stats_of(pnl, cfg.skew_estimator));
        pnls.push_back(std::move(pnl));
    }
    const auto total = aggregate(pnls, cfg.renormalize, cfg.trend.target_vol_annual);
    write_text_file(opts.out_dir / "aggregate.csv", pnl_to_csv(total));
    const auto stats = stats_of(total, cfg.skew_estimator);

    nlohmann::ordered_json report;
    report["aggregate"] = to_json(stats);
    report["contracts"] = std::move(contracts);
    write_text_file(opts.out_dir / "stats.json", dump_json(report));

    out << "sharpe_annual " << format_number(stats.sharpe_annual) << "\n";
    return exit_ok;
}

int cmd_strangle(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    const auto doc = ConfigDocument::load(opts.config);
    const auto cfg = parse_strangle_config(doc, opts);
    ensure_out_dir(opts.out_dir);

    const auto sweep = sweep_maturities(cfg.base, cfg.taus_years, cfg.markets, cfg.n_paths,
                                        cfg.seed, cfg.skew_estimator);
    std::string scatter = "label,market,tau_months,skew,sharpe\n";
    nlohmann::ordered_json points = nlohmann::ordered_json::object();
    for (const auto& p : sweep) {
        scatter += p.label + "," + p.market + "," + format_plain(p.tau_months) + "," +
                   format_number(p.stats.skew_low_moment) + "," +
                   format_number(p.stats.sharpe_annual) + "\n";
        points[p.label] = to_json(p.stats);
    }
    write_text_file(opts.out_dir / "scatter.csv", scatter);
    nlohmann::ordered_json report;
    report["points"] = std::move(points);
    write_text_file(opts.out_dir / "stats.json", dump_json(report));

    if (sweep.size() < 2) {
        err << "trendskew: note: a single sweep point cannot be regressed; fit.json not written\n";
        return exit_ok;
    }
    const auto fit = fit_sr_vs_skew(to_points(sweep));
    write_text_file(opts.out_dir / "fit.json", dump_json(to_json(fit)));
    out << "a " << format_number(fit.a) << "\n";
    out << "b " << format_number(fit.b) << "\n";
    return exit_ok;
}

int cmd_regress(const CommonOptions& opts, std::ostream& out, std::ostream&) {
    const auto doc = ConfigDocument::load(opts.config);
    const auto cfg = parse_regress_config(doc, opts);
    const auto points = read_scatter_csv(cfg.input);
    if (points.size() < 2) {
        throw ConfigError(cfg.input.string() + ": need at least 2 rows to fit a line, got " +
                          std::to_string(points.size()));
    }
    ensure_out_dir(opts.out_dir);
    const auto fit = fit_sr_vs_skew(points);
    write_text_file(opts.out_dir / "fit.json", dump_json(to_json(fit)));
    out << "a " << format_number(fit.a) << "\n";
    out << "b " << format_number(fit.b) << "\n";
    return exit_ok;
}

int cmd_synth(const CommonOptions& opts, std::ostream& out, std::ostream&) {
    const auto doc = ConfigDocument::load(opts.config);
    const auto cfg = parse_synth_config(doc, opts);
    ensure_out_dir(opts.out_dir);
    const auto series = load_source(cfg.source);
    const auto file = opts.out_dir / ("prices_" + cfg.source.label + ".csv");
    write_csv(series, file);
    out << file.string() << "\n";
    return exit_ok;
}

int run_command(const std::string& name, const CommonOptions& opts, std::ostream& out,
                std::ostream& err) {
    try {
        if (name == "trend") {
            return cmd_trend(opts, out, err);
        }
        if (name == "strangle") {
            return cmd_strangle(opts, out, err);
        }
        if (name == "regress") {
            return cmd_regress(opts, out, err);
        }
        if (name == "synth") {
            return cmd_synth(opts, out, err);
        }
        err << "trendskew: error: unknown command '" << name << "'\n";
        return exit_config;
    } catch (const ConfigError& e) {
        err << "trendskew: config error: " << e.what() << "\n";
        return exit_config;
    } catch (const InvalidArgument& e) {
        err << "trendskew: invalid parameter: " << e.what() << "\n";
        return exit_config;
    } catch (const DataError& e) {
        err << "trendskew: data error: " << e.what() << "\n";
        return exit_data;
    } catch (const DegenerateError& e) {
        err << "trendskew: numerical error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "trendskew: error: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace trendskew::cli
