#include "splitstudy/emit.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

std::string pct(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string ratio(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

template <typename T, typename F>
std::string opt(const std::optional<T>& v, F&& format) {
    return v ? format(*v) : std::string();
}

class Csv {
public:
    explicit Csv(std::initializer_list<const char*> header) { row(header); }

    template <typename Range>
    void row(const Range& cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) out_ << ',';
            out_ << c;
            first = false;
        }
        out_ << '\n';
    }
    void row(std::initializer_list<std::string> cells) { row<std::initializer_list<std::string>>(cells); }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string series_csv(const AnalysisReport& r, int limit, const char* value_name) {
    Csv csv({"sample_id", "offset", value_name});
    for (const auto& s : r.samples) {
        for (const auto& p : s.daily_volume) {
            if (std::abs(p.offset) <= limit) {
                csv.row({s.sample_id, std::to_string(p.offset),
                         std::to_string(static_cast<long long>(p.value))});
            }
        }
    }
    return csv.str();
}

std::string gap_csv(const AnalysisReport& r, bool half_year) {
    Csv csv({"sample_id", "basis", "offset", "gap"});
    for (const auto& s : r.samples) {
        const std::array<const std::optional<GapSeries>*, 2> both =
            half_year ? std::array{&s.gap_raw_126, &s.gap_adjusted_126}
                      : std::array{&s.gap_raw_90, &s.gap_adjusted_90};
        for (const auto* g : both) {
            if (!*g) continue;
            const auto& series = **g;
            for (std::size_t i = 0; i < series.offsets.size(); ++i) {
                csv.row({s.sample_id, to_string(series.basis), std::to_string(series.offsets[i]),
                         ratio(series.gaps[i])});
            }
        }
    }
    return csv.str();
}

std::string abnormal_csv(const AnalysisReport& r, bool demarcation) {
    Csv csv({"sample_id", "horizon_days", "baseline", "normal_return", "post_return", "beta",
             "market_influenced_return", "abnormal_pct", "beta_variant"});
    for (const auto& s : r.samples) {
        const auto& rows = demarcation ? s.abnormal_demarcation : s.abnormal;
        for (const auto& a : rows) {
            csv.row({s.sample_id, std::to_string(a.horizon), to_string(a.baseline),
                     ratio(a.normal_return), ratio(a.post_return), ratio(a.beta),
                     ratio(a.market_influenced_return), pct(100.0 * a.abnormal),
                     s.beta ? to_string(s.beta->variant) : ""});
        }
    }
    return csv.str();
}

std::string range_text(OffsetRange r) {
    return std::to_string(r.lo) + ".." + std::to_string(r.hi);
}

}  // namespace

const std::vector<std::string>& all_selectors() {
    static const std::vector<std::string> ids = {
        "table1", "table2", "table3", "beta",  "value", "liquidity", "fig1",  "fig2",
        "fig3",   "fig4",   "fig5",   "fig6",  "fig7",  "fig8",      "fig9",  "fig10",
        "fig11",  "fig12",  "fig13",  "fig14", "fig15", "fig16"};
    return ids;
}

std::string render_csv(const AnalysisReport& r, const std::string& id) {
    if (id == "table1") {
        Csv csv({"sample_id", "ticker", "effective_date", "split_ratio", "degenerate"});
        for (const auto& s : r.samples) {
            csv.row({s.sample_id, s.event.ticker, s.event.effective_date.to_string(),
                     ratio(s.event.ratio), s.degenerate_ratio ? "true" : "false"});
        }
        return csv.str();
    }
    if (id == "table2") {
        std::set<int> years;
        for (const auto& s : r.samples) {
            if (s.indexed_profit) {
                for (const auto& v : s.indexed_profit->values) years.insert(v.year);
            }
        }
        std::vector<std::string> header = {"sample_id", "split_year"};
        for (int y : years) header.push_back(std::to_string(y));
        header.push_back("total_diff");
        std::ostringstream out;
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& s : r.samples) {
            if (!s.indexed_profit) continue;
            const auto& row = *s.indexed_profit;
            out << s.sample_id << ',' << row.split_year;
            for (int y : years) out << ',' << opt(row.at(y), pct);
            out << ',' << opt(row.total_diff, pct) << '\n';
        }
        return out.str();
    }
    if (id == "table3") {
        Csv csv({"sample_id", "price_change_pct", "profit_change_pct", "roe_change_pp",
                 "consistent"});
        for (const auto& s : r.samples) {
            if (!s.consistency) continue;
            const auto& c = *s.consistency;
            csv.row({s.sample_id, pct(c.price_change_pct), pct(c.profit_change_pct),
                     pct(c.roe_change_pct), c.consistent ? "true" : "false"});
        }
        return csv.str();
    }
    if (id == "beta") {
        Csv csv({"sample_id", "beta", "variant", "n_obs"});
        for (const auto& s : r.samples) {
            if (!s.beta) continue;
            csv.row({s.sample_id, ratio(s.beta->beta), to_string(s.beta->variant),
                     std::to_string(s.beta->n_obs)});
        }
        return csv.str();
    }
    if (id == "value") {
        Csv csv({"sample_id", "horizon", "price_factor", "split_ratio", "value_factor"});
        for (const auto& s : r.samples) {
            for (const auto& [label, v] : {std::pair{"6m", &s.value_6m}, std::pair{"12m", &s.value_12m}}) {
                if (!*v) continue;
                csv.row({s.sample_id, label, ratio((*v)->price_factor), ratio((*v)->split_ratio),
                         ratio((*v)->value_factor)});
            }
        }
        return csv.str();
    }
    if (id == "liquidity") {
        Csv csv({"sample_id", "metric", "basis", "range", "before", "after"});
        for (const auto& s : r.samples) {
            for (const auto* g : {&s.gap_raw_90, &s.gap_adjusted_90, &s.gap_raw_126,
                                  &s.gap_adjusted_126}) {
                if (!*g) continue;
                csv.row({s.sample_id, "mean_gap", to_string((*g)->basis), range_text((*g)->range),
                         opt((*g)->mean_before, ratio), opt((*g)->mean_after, ratio)});
            }
            for (const auto* c : {&s.volume_90, &s.volume_126}) {
                if (!*c) continue;
                csv.row({s.sample_id, "volume_total", s.volume_basis,
                         range_text({(*c)->before_range.lo, (*c)->after_range.hi}),
                         std::to_string((*c)->before_total), std::to_string((*c)->after_total)});
            }
            for (const auto* t : {&s.trend_pre_90, &s.trend_year}) {
                if (!*t) continue;
                csv.row({s.sample_id, "volume_trend_slope", s.volume_basis,
                         range_text((*t)->range), ratio((*t)->slope),
                         opt((*t)->normalized_slope_pct, pct)});
            }
        }
        return csv.str();
    }
    if (id == "fig1") {
        Csv csv({"sample_id", "before_total", "after_total", "before_pct", "after_pct_of_before",
                 "before_coverage", "after_coverage", "volume_basis"});
        for (const auto& s : r.samples) {
            if (!s.volume_30) continue;
            const auto& c = *s.volume_30;
            csv.row({s.sample_id, std::to_string(c.before_total), std::to_string(c.after_total),
                     "100.00", opt(c.after_pct_of_before, pct), ratio(c.before_coverage),
                     ratio(c.after_coverage), s.volume_basis});
        }
        return csv.str();
    }
    if (id == "fig2") {
        Csv csv({"span_days", "before_share", "after_share"});
        if (r.aggregate.volume_shares_30) {
            csv.row({"30", ratio(r.aggregate.volume_shares_30->before_share),
                     ratio(r.aggregate.volume_shares_30->after_share)});
        }
        if (r.aggregate.volume_shares_90) {
            csv.row({"90", ratio(r.aggregate.volume_shares_90->before_share),
                     ratio(r.aggregate.volume_shares_90->after_share)});
        }
        return csv.str();
    }
    if (id == "fig3") return series_csv(r, 30, "volume");
    if (id == "fig14") return series_csv(r, 90, "volume");
    if (id == "fig16") return series_csv(r, 126, "volume");
    if (id == "fig4") {
        Csv csv({"sample_id", "segment", "range", "slope", "intercept", "normalized_slope_pct",
                 "n_points"});
        for (const auto& s : r.samples) {
            for (const auto& [label, t] :
                 {std::pair{"before", &s.trend_before_30}, std::pair{"after", &s.trend_after_30}}) {
                if (!*t) continue;
                csv.row({s.sample_id, label, range_text((*t)->range), ratio((*t)->slope),
                         ratio((*t)->intercept), opt((*t)->normalized_slope_pct, pct),
                         std::to_string((*t)->n_points)});
            }
        }
        return csv.str();
    }
    if (id == "fig5") {
        Csv csv({"sample_id", "offset", "group", "price", "field"});
        const PriceGroups groups;
        for (const auto& s : r.samples) {
            for (const auto& p : s.daily_price) {
                const char* g = groups.g1.contains(p.offset)   ? "g1"
                                : groups.g2.contains(p.offset) ? "g2"
                                                               : "g3";
                csv.row({s.sample_id, std::to_string(p.offset), g, ratio(p.value), s.price_basis});
            }
        }
        return csv.str();
    }
    if (id == "fig6") {
        Csv csv({"sample_id", "field", "g1_avg", "g2_avg", "g3_avg", "g1", "g2", "g3"});
        for (const auto& s : r.samples) {
            if (!s.period_averages) continue;
            const auto& p = *s.period_averages;
            csv.row({s.sample_id, to_string(p.field), ratio(p.g1_avg), ratio(p.g2_avg),
                     ratio(p.g3_avg), range_text(p.groups.g1), range_text(p.groups.g2),
                     range_text(p.groups.g3)});
        }
        return csv.str();
    }
    if (id == "fig7" || id == "fig10") {
        Csv csv({"sample_id", "label", "range", "price_change_pct", "field"});
        for (const auto& s : r.samples) {
            for (const auto& c : s.price_changes) {
                const bool around = c.label == "-4m..+4m";
                if (around == (id == "fig10")) {
                    csv.row({s.sample_id, c.label, range_text(c.range), pct(c.pct), s.price_basis});
                }
            }
        }
        return csv.str();
    }
    if (id == "fig8") {
        Csv csv({"sample_id", "split_year", "year", "indexed_net_profit"});
        for (const auto& s : r.samples) {
            if (!s.indexed_profit) continue;
            for (const auto& v : s.indexed_profit->values) {
                csv.row({s.sample_id, std::to_string(s.indexed_profit->split_year),
                         std::to_string(v.year), pct(v.value)});
            }
        }
        return csv.str();
    }
    if (id == "fig9") {
        Csv csv({"sample_id", "start_year", "end_year", "roe_start", "roe_end", "roe_change_pp"});
        for (const auto& s : r.samples) {
            if (!s.roe) continue;
            csv.row({s.sample_id, std::to_string(s.roe->start_year), std::to_string(s.roe->end_year),
                     ratio(s.roe->roe_start), ratio(s.roe->roe_end), pct(s.roe->change_pp)});
        }
        return csv.str();
    }
    if (id == "fig11") return abnormal_csv(r, false);
    if (id == "fig12") return abnormal_csv(r, true);
    if (id == "fig13") return gap_csv(r, false);
    if (id == "fig15") return gap_csv(r, true);
    throw InputError("unknown selector '" + id + "'");
}

std::string render_json(const AnalysisReport& report) {
    return nlohmann::json(report).dump(2) + "\n";
}

AnalysisReport parse_report_json(std::string_view text) {
    try {
        return nlohmann::json::parse(text).get<AnalysisReport>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("report JSON: ") + e.what());
    }
}

std::vector<std::filesystem::path> emit(const AnalysisReport& report, EmitFormat format,
                                        std::span<const std::string> selectors,
                                        const std::filesystem::path& out_dir) {
    const auto& known = all_selectors();
    for (const auto& id : selectors) {
        if (std::find(known.begin(), known.end(), id) == known.end()) {
            throw InputError("unknown selector '" + id + "'");
        }
    }
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::filesystem::path& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot write " + path.string());
        out << body;
        written.push_back(path);
    };
    if (format == EmitFormat::json) {
        write(out_dir / "report.json", render_json(report));
    } else {
        for (const auto& id : selectors) write(out_dir / (id + ".csv"), render_csv(report, id));
    }
    return written;
}

}  // namespace splitstudy
