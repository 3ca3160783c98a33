#include "splitstudy/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include <openssl/evp.h>

#include "splitstudy/adjust.hpp"
#include "splitstudy/csv_io.hpp"
#include "splitstudy/emit.hpp"
#include "splitstudy/error.hpp"
#include "splitstudy/synthetic.hpp"

#ifndef SPLITSTUDY_VERSION
#define SPLITSTUDY_VERSION "0.0.0"
#endif

namespace splitstudy {
namespace {

std::string sample_id(const SplitEvent& e) {
    return e.ticker + "@" + e.effective_date.to_string();
}

// Runs one metric; an AnalysisError becomes a note instead of sinking the sample.
void metric(SampleReport& s, const char* name, const std::function<void()>& body) {
    try {
        body();
    } catch (const AnalysisError& e) {
        s.notes.push_back(std::string(name) + ": " + e.what());
    }
}

std::vector<SeriesPoint> series(const EventWindow& w, OffsetRange range,
                                const std::function<double(const TradingBar&)>& value) {
    std::vector<SeriesPoint> out;
    auto [first, last] = w.index_range(range);
    for (std::size_t i = first; i < last; ++i) {
        out.push_back({w.offsets()[i], value(w.bars()[i])});
    }
    return out;
}

const FundamentalRecord* find_record(std::span<const FundamentalRecord> records, int year) {
    for (const auto& r : records) {
        if (r.fiscal_year == year) return &r;
    }
    return nullptr;
}

void analyze_h1(SampleReport& s, const EventWindow& prices, const EventWindow& volumes,
                const AnalysisOptions& opt, int volume_span) {
    metric(s, "volume_30", [&] { s.volume_30 = compare_volume(volumes, 30); });
    metric(s, "trend_before_30", [&] { s.trend_before_30 = volume_trend(volumes, -30, -1); });
    metric(s, "trend_after_30", [&] { s.trend_after_30 = volume_trend(volumes, 1, 30); });
    s.daily_volume = series(volumes, {-volume_span, volume_span},
                            [](const TradingBar& b) { return static_cast<double>(b.volume); });
    s.daily_price = series(prices, {-91, 91}, [&](const TradingBar& b) {
        return price_of(b, opt.price_field);
    });
    metric(s, "period_averages", [&] { s.period_averages = period_averages(prices, opt.price_field); });
}

void analyze_h2(SampleReport& s, const EventWindow& w, const Dataset& data,
                std::span<const FundamentalRecord> records, std::optional<int> final_year,
                const AnalysisOptions& opt) {
    const int m = opt.month_days;
    for (int k : {1, 2, 3, 6, 12}) {
        const std::string label = std::to_string(k) + "m";
        metric(s, ("price_change_" + label).c_str(), [&] {
            s.price_changes.push_back(
                {label, {-1, k * m}, price_change_pct(w, -1, k * m, opt.price_field)});
        });
    }
    metric(s, "price_change_4m_around", [&] {
        s.price_changes.push_back(
            {"-4m..+4m", {-4 * m, 4 * m}, price_change_pct(w, -4 * m, 4 * m, opt.price_field)});
    });

    // V = P * N on raw prices: N grows by the ratio at the split.
    metric(s, "value_6m", [&] {
        s.value_6m = value_factor(price_ratio(w, -1, 6 * m, PriceField::close), s.event.ratio);
    });
    metric(s, "value_12m", [&] {
        s.value_12m = value_factor(price_ratio(w, -1, 12 * m, PriceField::close), s.event.ratio);
    });

    metric(s, "beta", [&] {
        if (data.rates.empty()) throw AnalysisError("no reference rate series supplied");
        s.beta = estimate_beta(w, data.rates, opt.beta_variant, opt.price_field);
    });
    metric(s, "demarcation_price", [&] {
        s.demarcation_price = demarcation_price(w, opt.price_field, opt.demarcation);
    });
    if (s.beta) {
        for (auto baseline : {Baseline::period_start, Baseline::demarcation}) {
            AbnormalReturnOptions ar;
            ar.baseline = baseline;
            ar.post_source = opt.post_return;
            ar.field = opt.price_field;
            ar.demarcation = opt.demarcation;
            auto& out = baseline == Baseline::period_start ? s.abnormal : s.abnormal_demarcation;
            for (int k = 1; k <= 4; ++k) {
                metric(s, "abnormal_return", [&] {
                    out.push_back(abnormal_return(w, data.rates, k * m, *s.beta, ar));
                });
            }
        }
    }

    if (records.empty()) {
        s.notes.push_back("fundamentals: no records for " + s.event.ticker);
        return;
    }
    const int split_year = s.event.effective_date.year();
    metric(s, "indexed_profit", [&] {
        s.indexed_profit = indexed_net_profit(records, split_year, final_year);
    });
    metric(s, "roe", [&] {
        const auto* start = find_record(records, split_year);
        const auto* end = find_record(records, split_year + 1);
        if (start == nullptr || end == nullptr) {
            throw AnalysisError("need fundamentals for " + std::to_string(split_year) + " and " +
                                std::to_string(split_year + 1));
        }
        s.roe = RoeSummary{split_year, split_year + 1, roe(*start), roe(*end),
                           roe_change(*start, *end)};
    });
    metric(s, "consistency", [&] {
        auto price = std::find_if(s.price_changes.begin(), s.price_changes.end(),
                                  [](const PriceChange& c) { return c.label == "12m"; });
        if (price == s.price_changes.end() || !s.indexed_profit || !s.roe) {
            throw AnalysisError("needs the 12m price change, indexed profit and ROE change");
        }
        auto next = s.indexed_profit->at(split_year + 1);
        if (!next) throw AnalysisError("no net profit for the year after the split");
        s.consistency =
            classify_consistency(price->pct, *next - 100.0, s.roe->change_pp, s.event.ticker);
    });
}

void analyze_h3(SampleReport& s, const EventWindow& prices, const EventWindow& volumes,
                const AnalysisOptions& opt) {
    const int half_year = 6 * opt.month_days;
    metric(s, "gap_raw_90", [&] { s.gap_raw_90 = gap_series(prices, -90, 90, GapBasis::raw); });
    metric(s, "gap_adjusted_90",
           [&] { s.gap_adjusted_90 = gap_series(prices, -90, 90, GapBasis::split_adjusted); });
    metric(s, "gap_raw_126",
           [&] { s.gap_raw_126 = gap_series(prices, -half_year, half_year, GapBasis::raw); });
    metric(s, "gap_adjusted_126", [&] {
        s.gap_adjusted_126 = gap_series(prices, -half_year, half_year, GapBasis::split_adjusted);
    });
    metric(s, "volume_90", [&] { s.volume_90 = compare_volume(volumes, 90); });
    metric(s, "volume_126", [&] { s.volume_126 = compare_volume(volumes, half_year); });
    metric(s, "trend_pre_90", [&] { s.trend_pre_90 = volume_trend(volumes, -90, -1); });
    metric(s, "trend_year",
           [&] { s.trend_year = volume_trend(volumes, -half_year, half_year); });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
        throw InputError("config: bad value '" + std::string(value) + "' for " +
                         std::string(key));
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

const char* to_string(Hypothesis h) noexcept {
    switch (h) {
        case Hypothesis::h1: return "h1";
        case Hypothesis::h2: return "h2";
        case Hypothesis::h3: return "h3";
        case Hypothesis::all: return "all";
    }
    return "all";
}

const char* to_string(VolumeBasis b) noexcept {
    return b == VolumeBasis::raw ? "raw" : "adjusted";
}

OffsetRange AnalysisOptions::required_window() const noexcept {
    const int m = month_days;
    int pre = 0;
    int post = 0;
    if (runs(Hypothesis::h1)) {
        pre = std::max(pre, 91);
        post = std::max(post, 91);
    }
    if (runs(Hypothesis::h2)) {
        pre = std::max({pre, kBaselineDays, 4 * m, -demarcation.first, -demarcation.second});
        post = std::max({post, 12 * m, 4 * m});
    }
    if (runs(Hypothesis::h3)) {
        pre = std::max({pre, 90, 6 * m});
        post = std::max({post, 90, 6 * m});
    }
    return {-pre, post};
}

AnalysisReport analyze(const Dataset& data, const AnalysisOptions& opt, RunMetadata meta) {
    if (opt.month_days < 1) throw InputError("month_days must be >= 1");
    if (!(opt.min_coverage >= 0.0 && opt.min_coverage <= 1.0)) {
        throw InputError("min_coverage must lie in [0, 1]");
    }
    AnalysisReport report;
    report.meta = std::move(meta);

    std::vector<SplitEvent> events = data.splits;
    std::sort(events.begin(), events.end(), [](const SplitEvent& a, const SplitEvent& b) {
        return std::tie(a.ticker, a.effective_date, a.ratio) <
               std::tie(b.ticker, b.effective_date, b.ratio);
    });

    const auto bar_key = [](const TradingBar& a, const TradingBar& b) {
        return std::tie(a.ticker, a.date) < std::tie(b.ticker, b.date);
    };
    std::vector<TradingBar> sorted_bars;
    std::span<const TradingBar> bars = data.bars;
    if (!std::is_sorted(bars.begin(), bars.end(), bar_key)) {
        sorted_bars.assign(bars.begin(), bars.end());
        std::sort(sorted_bars.begin(), sorted_bars.end(), bar_key);
        bars = sorted_bars;
    }
    std::vector<FundamentalRecord> fundamentals = data.fundamentals;
    std::sort(fundamentals.begin(), fundamentals.end(),
              [](const FundamentalRecord& a, const FundamentalRecord& b) {
                  return std::tie(a.ticker, a.fiscal_year) < std::tie(b.ticker, b.fiscal_year);
              });

    std::vector<TradingBar> adjusted;
    if (opt.volume_basis == VolumeBasis::adjusted) {
        adjusted = split_adjust(bars, data.splits, AdjustMode::prices_and_volume);
    }
    std::optional<int> final_year = opt.final_year;
    if (!final_year && !fundamentals.empty()) {
        int latest = fundamentals.front().fiscal_year;
        for (const auto& r : fundamentals) latest = std::max(latest, r.fiscal_year);
        final_year = latest;
    }

    const OffsetRange span = opt.required_window();
    const int volume_span = opt.runs(Hypothesis::h3) ? std::max(90, 6 * opt.month_days) : 30;
    for (const auto& event : events) {
        const std::string id = sample_id(event);
        std::optional<EventWindow> prices;
        std::optional<EventWindow> volumes;
        try {
            prices.emplace(align_to_event(bars, event, -span.lo, span.hi, opt.min_coverage));
            if (opt.volume_basis == VolumeBasis::adjusted) {
                volumes.emplace(
                    align_to_event(adjusted, event, -span.lo, span.hi, opt.min_coverage));
            }
        } catch (const AnalysisError& e) {
            report.exclusions.push_back({id, e.what()});
            continue;
        }
        const EventWindow& vw = volumes ? *volumes : *prices;

        SampleReport s;
        s.sample_id = id;
        s.event = event;
        s.degenerate_ratio = event.degenerate();
        s.window = span;
        s.coverage = prices->coverage();
        s.price_basis = to_string(opt.price_field);
        s.volume_basis = to_string(opt.volume_basis);

        if (opt.runs(Hypothesis::h1)) analyze_h1(s, *prices, vw, opt, volume_span);
        if (opt.runs(Hypothesis::h2)) {
            auto lo = std::lower_bound(fundamentals.begin(), fundamentals.end(),
                                       event.ticker, [](const FundamentalRecord& r,
                                                        const std::string& t) { return r.ticker < t; });
            auto hi = std::find_if(lo, fundamentals.end(), [&](const FundamentalRecord& r) {
                return r.ticker != event.ticker;
            });
            analyze_h2(s, *prices, data, std::span<const FundamentalRecord>(lo, hi), final_year,
                       opt);
        }
        if (opt.runs(Hypothesis::h3)) analyze_h3(s, *prices, vw, opt);
        report.samples.push_back(std::move(s));
    }

    auto& agg = report.aggregate;
    agg.n_samples = report.samples.size();
    agg.n_excluded = report.exclusions.size();
    if (report.samples.empty()) {
        std::string why = events.empty() ? "no split events" : report.exclusions.front().reason;
        throw NoSamplesError("no analyzable samples (" + why + ")");
    }
    std::vector<VolumeComparison> c30;
    std::vector<VolumeComparison> c90;
    for (const auto& s : report.samples) {
        if (s.volume_30) c30.push_back(*s.volume_30);
        if (s.volume_90) c90.push_back(*s.volume_90);
        if (s.consistency) ++(s.consistency->consistent ? agg.n_consistent : agg.n_inconsistent);
    }
    try {
        if (!c30.empty()) agg.volume_shares_30 = aggregate_volume_share(c30);
        if (!c90.empty()) agg.volume_shares_90 = aggregate_volume_share(c90);
    } catch (const AnalysisError&) {
        // All-zero volume universes leave the shares absent.
    }
    return report;
}

void PipelineConfig::set(std::string_view key, std::string_view value) {
    const std::string v(value);
    auto bad = [&]() -> InputError {
        return InputError("config: bad value '" + v + "' for " + std::string(key));
    };
    if (key == "version") {
        if (parse_number<int>(key, value) != kConfigVersion) {
            throw InputError("config: unsupported version " + v + " (expected " +
                             std::to_string(kConfigVersion) + ")");
        }
    } else if (key == "bars") {
        bars = v;
    } else if (key == "splits") {
        splits = v;
    } else if (key == "fundamentals") {
        fundamentals = v;
    } else if (key == "rates") {
        rates = v;
    } else if (key == "seed") {
        seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "synthetic_days") {
        synthetic_days = parse_number<int>(key, value);
        if (synthetic_days < 2) throw bad();
    } else if (key == "out") {
        out = v;
    } else if (key == "hypothesis") {
        if (v == "h1") options.hypothesis = Hypothesis::h1;
        else if (v == "h2") options.hypothesis = Hypothesis::h2;
        else if (v == "h3") options.hypothesis = Hypothesis::h3;
        else if (v == "all") options.hypothesis = Hypothesis::all;
        else throw bad();
    } else if (key == "basis") {
        if (v == "adjusted") options.price_field = PriceField::adj_close;
        else if (v == "raw") options.price_field = PriceField::close;
        else throw bad();
    } else if (key == "volume_basis") {
        if (v == "raw") options.volume_basis = VolumeBasis::raw;
        else if (v == "adjusted") options.volume_basis = VolumeBasis::adjusted;
        else throw bad();
    } else if (key == "beta_variant") {
        if (v == "cov") options.beta_variant = BetaVariant::covariance;
        else if (v == "corr") options.beta_variant = BetaVariant::correlation;
        else throw bad();
    } else if (key == "post_return") {
        if (v == "stock") options.post_return = PostReturnSource::stock;
        else if (v == "reference") options.post_return = PostReturnSource::reference;
        else throw bad();
    } else if (key == "month_days") {
        options.month_days = parse_number<int>(key, value);
        if (options.month_days < 1) throw bad();
    } else if (key == "min_coverage") {
        options.min_coverage = parse_number<double>(key, value);
        if (!(options.min_coverage >= 0.0 && options.min_coverage <= 1.0)) throw bad();
    } else if (key == "demarcation") {
        const auto comma = value.find(',');
        if (comma == std::string_view::npos) throw bad();
        options.demarcation.first = parse_number<int>(key, trim(value.substr(0, comma)));
        options.demarcation.second = parse_number<int>(key, trim(value.substr(comma + 1)));
        if (options.demarcation.first >= 0 || options.demarcation.second >= 0) throw bad();
    } else if (key == "final_year") {
        options.final_year = parse_number<int>(key, value);
    } else if (key == "emit") {
        emit.clear();
        std::string_view rest = value;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string id(trim(rest.substr(0, comma)));
            if (id == "all") {
                emit = all_selectors();
            } else if (!id.empty()) {
                const auto& known = all_selectors();
                if (std::find(known.begin(), known.end(), id) == known.end()) {
                    throw InputError("unknown selector '" + id + "'");
                }
                if (std::find(emit.begin(), emit.end(), id) == emit.end()) emit.push_back(id);
            }
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    } else if (key == "format") {
        if (v == "csv") format = EmitFormat::csv;
        else if (v == "json") format = EmitFormat::json;
        else throw bad();
    } else if (key == "timestamp") {
        timestamp = v;
    } else {
        throw InputError("config: unknown key '" + std::string(key) + "'");
    }
}

std::map<std::string, std::string> PipelineConfig::echo() const {
    std::map<std::string, std::string> e;
    auto path = [](const std::optional<std::filesystem::path>& p) {
        return p ? p->generic_string() : std::string();
    };
    e["version"] = std::to_string(kConfigVersion);
    e["bars"] = path(bars);
    e["splits"] = path(splits);
    e["fundamentals"] = path(fundamentals);
    e["rates"] = path(rates);
    e["seed"] = seed ? std::to_string(*seed) : "";
    if (seed) e["synthetic_days"] = std::to_string(synthetic_days);
    e["hypothesis"] = to_string(options.hypothesis);
    e["basis"] = options.price_field == PriceField::adj_close ? "adjusted" : "raw";
    e["volume_basis"] = to_string(options.volume_basis);
    e["beta_variant"] = options.beta_variant == BetaVariant::covariance ? "cov" : "corr";
    e["post_return"] = to_string(options.post_return);
    e["month_days"] = std::to_string(options.month_days);
    e["min_coverage"] = format_real(options.min_coverage);
    e["demarcation"] = std::to_string(options.demarcation.first) + "," +
                       std::to_string(options.demarcation.second);
    e["final_year"] = options.final_year ? std::to_string(*options.final_year) : "";
    return e;
}

PipelineConfig parse_config(std::string_view text, const std::string& source) {
    PipelineConfig config;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw InputError(source, line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) {
            throw InputError(source, line_no, "duplicate key '" + std::string(key) + "'");
        }
        try {
            config.set(key, value);
        } catch (const InputError& e) {
            throw InputError(source, line_no, e.what());
        }
    }
    if (!seen.contains("version")) throw InputError(source + ": missing 'version' key");
    return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    auto config = parse_config(read_file(path), path.string());
    const auto dir = path.parent_path();
    for (auto* p : {&config.bars, &config.splits, &config.fundamentals, &config.rates, &config.out}) {
        if (*p && p->value().is_relative()) *p = dir / p->value();
    }
    return config;
}

Dataset load_dataset(const PipelineConfig& config) {
    Dataset data;
    if (!config.bars && config.seed) {
        synthetic::UniverseSpec spec;
        spec.seed = *config.seed;
        spec.n_days = config.synthetic_days;
        return synthetic::generate_universe(spec);
    }
    if (!config.bars || !config.splits) {
        throw InputError("config: 'bars' and 'splits' are required unless 'seed' is given");
    }
    data.bars = parse_bars(*config.bars);
    data.splits = parse_splits(*config.splits);
    if (config.fundamentals) data.fundamentals = parse_fundamentals(*config.fundamentals);
    if (config.rates) data.rates = parse_rates(*config.rates);
    return data;
}

AnalysisReport run_pipeline(const PipelineConfig& config) {
    const Dataset data = load_dataset(config);
    RunMetadata meta;
    meta.engine_version = engine_version();
    meta.config = config.echo();
    meta.timestamp = config.timestamp;
    if (config.bars) {
        for (const auto& [name, path] :
             {std::pair{"bars", config.bars}, std::pair{"splits", config.splits},
              std::pair{"fundamentals", config.fundamentals}, std::pair{"rates", config.rates}}) {
            if (path) meta.input_digests[name] = sha256_hex(read_file(*path));
        }
    } else {
        std::ostringstream bars, splits, fundamentals, rates;
        write_bars(bars, data.bars);
        write_splits(splits, data.splits);
        write_fundamentals(fundamentals, data.fundamentals);
        write_rates(rates, data.rates);
        meta.input_digests["bars"] = sha256_hex(bars.str());
        meta.input_digests["splits"] = sha256_hex(splits.str());
        meta.input_digests["fundamentals"] = sha256_hex(fundamentals.str());
        meta.input_digests["rates"] = sha256_hex(rates.str());
    }
    return analyze(data, config.options, std::move(meta));
}

std::string engine_version() { return SPLITSTUDY_VERSION; }

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw InvariantError("SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0xF]);
    }
    return out;
}

}  // namespace splitstudy
