// splitstudy: stock-split event study from the command line.
//
//   splitstudy run --config study.cfg
//   splitstudy run --bars bars.csv --splits splits.csv --out report/ --emit all
//   splitstudy run --seed 2013 --format json
//   splitstudy generate --seed 2013 --out data/
//
// Exit codes: 0 ok, 1 input error, 2 no analyzable samples, 3 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "splitstudy/csv_io.hpp"
#include "splitstudy/emit.hpp"
#include "splitstudy/error.hpp"
#include "splitstudy/pipeline.hpp"
#include "splitstudy/synthetic.hpp"

namespace fs = std::filesystem;
using namespace splitstudy;

namespace {

enum Exit { kOk = 0, kInput = 1, kNoSamples = 2, kInternal = 3 };

struct RunArgs {
    std::string config;
    // Flag overrides in command-line order, applied on top of the config.
    std::vector<std::pair<std::string, std::string>> overrides;
};

int do_run(const RunArgs& args) {
    PipelineConfig config = args.config.empty() ? PipelineConfig{} : load_config(args.config);
    for (const auto& [key, value] : args.overrides) config.set(key, value);

    const AnalysisReport report = run_pipeline(config);
    if (!config.out) {
        std::cout << render_json(report);
    } else {
        std::vector<std::string> selectors = config.emit.empty() ? all_selectors() : config.emit;
        for (const auto& path : emit(report, config.format, selectors, *config.out)) {
            std::cerr << "wrote " << path.string() << "\n";
        }
    }
    std::cerr << report.samples.size() << " samples analyzed, " << report.exclusions.size()
              << " excluded\n";
    for (const auto& e : report.exclusions) {
        std::cerr << "  excluded " << e.sample_id << ": " << e.reason << "\n";
    }
    return kOk;
}

template <typename Writer, typename Data>
void write_csv(const fs::path& path, Writer writer, const Data& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    writer(out, data);
    std::cerr << "wrote " << path.string() << "\n";
}

int do_generate(std::uint64_t seed, int days, const fs::path& out) {
    synthetic::UniverseSpec spec;
    spec.seed = seed;
    spec.n_days = days;
    const Dataset d = synthetic::generate_universe(spec);
    fs::create_directories(out);
    write_csv(out / "bars.csv", write_bars, d.bars);
    write_csv(out / "splits.csv", write_splits, d.splits);
    write_csv(out / "fundamentals.csv", write_fundamentals, d.fundamentals);
    write_csv(out / "rates.csv", write_rates, d.rates);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stock-split event study: volume, price, abnormal return and liquidity effects"};
    app.set_version_flag("--version", engine_version());
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Analyze split events and emit tables/figure data");
    run->add_option("-c,--config", run_args.config, "key = value config file (version = 1)")
        ->check(CLI::ExistingFile);
    // Every flag maps 1:1 onto a config key.
    const std::vector<std::tuple<std::string, std::string, std::string>> flags = {
        {"--bars", "bars", "OHLCV bars CSV"},
        {"--splits", "splits", "split calendar CSV"},
        {"--fundamentals", "fundamentals", "net profit / equity CSV"},
        {"--rates", "rates", "reference daily rates CSV"},
        {"--out", "out", "output directory (default: JSON to stdout)"},
        {"--hypothesis", "hypothesis", "h1 | h2 | h3 | all"},
        {"--basis", "basis", "price basis: adjusted | raw"},
        {"--volume-basis", "volume_basis", "raw | adjusted"},
        {"--beta-variant", "beta_variant", "cov | corr"},
        {"--post-return", "post_return", "stock | reference"},
        {"--month-days", "month_days", "trading days per month"},
        {"--min-coverage", "min_coverage", "minimum window coverage in [0, 1]"},
        {"--final-year", "final_year", "last fiscal year for indexed profit"},
        {"--seed", "seed", "synthetic mode: generate the nine-sample universe"},
        {"--synthetic-days", "synthetic_days", "trading days per synthetic ticker"},
        {"--emit", "emit", "comma list of selectors, or all"},
        {"--format", "format", "csv | json"},
        {"--timestamp", "timestamp", "pinned timestamp recorded in the report"},
    };
    for (const auto& [flag, key, help] : flags) {
        run->add_option_function<std::string>(
            flag, [&run_args, key = key](const std::string& v) { run_args.overrides.emplace_back(key, v); },
            help);
    }

    std::uint64_t gen_seed = 2013;
    int gen_days = 500;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "Write a synthetic nine-sample universe as CSV");
    generate->add_option("--seed", gen_seed, "base seed")->capture_default_str();
    generate->add_option("--days", gen_days, "trading days per ticker")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    generate->add_option("--out", gen_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    try {
        if (*run) return do_run(run_args);
        return do_generate(gen_seed, gen_days, gen_out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const NoSamplesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNoSamples;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
