#include "trendskew/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
    using namespace trendskew;
    CLI::App app{"trendskew: trend-following and short-volatility backtests with Sharpe/skewness statistics"};
    app.require_subcommand(1);

    struct Parsed {
        std::string config;
        std::string out_dir = ".";
        std::uint64_t seed = 0;
        std::string skew;
    };
    std::map<std::string, Parsed> parsed;

    const std::pair<const char*, const char*> commands[] = {
        {"trend", "Five-month trend strategy on each source plus the unit-vol aggregate"},
        {"strangle", "Maturity x market sweep of short hedged strangles and the SR-vs-skew fit"},
        {"regress", "Fit SR = a - b * skew to an existing label,skew,sharpe file"},
        {"synth", "Write a synthetic price series as date,price CSV"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        auto& p = parsed[name];
        sub->add_option("--config", p.config, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out-dir", p.out_dir, "Output directory (created if missing)");
        sub->add_option("--seed", p.seed, "Global seed, overrides the config");
        sub->add_option("--skew-estimator", p.skew, "Low-moment skewness estimator")
            ->check(CLI::IsMember({"pearson", "l-moment", "third-moment"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_config;
    }

    for (auto* sub : app.get_subcommands()) {
        const auto& p = parsed.at(sub->get_name());
        cli::CommonOptions opts;
        opts.config = p.config;
        opts.out_dir = p.out_dir;
        if (sub->count("--seed") > 0) {
            opts.seed = p.seed;
        }
        if (!p.skew.empty()) {
            opts.skew_estimator = parse_skew_estimator(p.skew);
        }
        return cli::run_command(sub->get_name(), opts, std::cout, std::cerr);
    }
    return cli::exit_config;
}
