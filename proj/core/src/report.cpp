#include "splitstudy/report.hpp"

namespace splitstudy {

using nlohmann::json;

NLOHMANN_JSON_SERIALIZE_ENUM(PriceField, {{PriceField::adj_close, "adj_close"},
                                          {PriceField::close, "close"}})
NLOHMANN_JSON_SERIALIZE_ENUM(GapBasis, {{GapBasis::raw, "raw"},
                                        {GapBasis::split_adjusted, "split_adjusted"}})
NLOHMANN_JSON_SERIALIZE_ENUM(BetaVariant, {{BetaVariant::covariance, "covariance"},
                                           {BetaVariant::correlation, "correlation"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Baseline, {{Baseline::period_start, "period_start"},
                                        {Baseline::demarcation, "demarcation"}})

namespace {

template <typename T>
void put(json& j, const char* key, const std::optional<T>& value) {
    if (value) {
        j[key] = *value;
    } else {
        j[key] = nullptr;
    }
}

template <typename T>
void get(const json& j, const char* key, std::optional<T>& value) {
    const auto& v = j.at(key);
    if (v.is_null()) {
        value.reset();
    } else {
        value = v.get<T>();
    }
}

}  // namespace

void to_json(json& j, const OffsetRange& r) { j = json::array({r.lo, r.hi}); }
void from_json(const json& j, OffsetRange& r) {
    r.lo = j.at(0).get<int>();
    r.hi = j.at(1).get<int>();
}

void to_json(json& j, const SplitEvent& e) {
    j = {{"ticker", e.ticker}, {"effective_date", e.effective_date.to_string()}, {"ratio", e.ratio}};
}
void from_json(const json& j, SplitEvent& e) {
    e.ticker = j.at("ticker").get<std::string>();
    e.effective_date = Date::parse(j.at("effective_date").get<std::string>());
    e.ratio = j.at("ratio").get<double>();
}

void to_json(json& j, const VolumeComparison& c) {
    j = {{"before_total", c.before_total},   {"after_total", c.after_total},
         {"before_range", c.before_range},   {"after_range", c.after_range},
         {"before_coverage", c.before_coverage}, {"after_coverage", c.after_coverage}};
    put(j, "after_pct_of_before", c.after_pct_of_before);
}
void from_json(const json& j, VolumeComparison& c) {
    j.at("before_total").get_to(c.before_total);
    j.at("after_total").get_to(c.after_total);
    j.at("before_range").get_to(c.before_range);
    j.at("after_range").get_to(c.after_range);
    j.at("before_coverage").get_to(c.before_coverage);
    j.at("after_coverage").get_to(c.after_coverage);
    get(j, "after_pct_of_before", c.after_pct_of_before);
}

void to_json(json& j, const VolumeShares& s) {
    j = {{"before_share", s.before_share}, {"after_share", s.after_share}};
}
void from_json(const json& j, VolumeShares& s) {
    j.at("before_share").get_to(s.before_share);
    j.at("after_share").get_to(s.after_share);
}

void to_json(json& j, const TrendFit& f) {
    j = {{"slope", f.slope}, {"intercept", f.intercept}, {"range", f.range}, {"n_points", f.n_points}};
    put(j, "normalized_slope_pct", f.normalized_slope_pct);
}
void from_json(const json& j, TrendFit& f) {
    j.at("slope").get_to(f.slope);
    j.at("intercept").get_to(f.intercept);
    j.at("range").get_to(f.range);
    j.at("n_points").get_to(f.n_points);
    get(j, "normalized_slope_pct", f.normalized_slope_pct);
}

void to_json(json& j, const SeriesPoint& p) { j = json::array({p.offset, p.value}); }
void from_json(const json& j, SeriesPoint& p) {
    p.offset = j.at(0).get<int>();
    p.value = j.at(1).get<double>();
}

void to_json(json& j, const PeriodAverages& p) {
    j = {{"g1_avg", p.g1_avg}, {"g2_avg", p.g2_avg}, {"g3_avg", p.g3_avg},
         {"g1", p.groups.g1},  {"g2", p.groups.g2},  {"g3", p.groups.g3},
         {"field", p.field}};
}
void from_json(const json& j, PeriodAverages& p) {
    j.at("g1_avg").get_to(p.g1_avg);
    j.at("g2_avg").get_to(p.g2_avg);
    j.at("g3_avg").get_to(p.g3_avg);
    j.at("g1").get_to(p.groups.g1);
    j.at("g2").get_to(p.groups.g2);
    j.at("g3").get_to(p.groups.g3);
    j.at("field").get_to(p.field);
}

void to_json(json& j, const PriceChange& c) {
    j = {{"label", c.label}, {"range", c.range}, {"pct", c.pct}};
}
void from_json(const json& j, PriceChange& c) {
    j.at("label").get_to(c.label);
    j.at("range").get_to(c.range);
    j.at("pct").get_to(c.pct);
}

void to_json(json& j, const ValueFactor& v) {
    j = {{"price_factor", v.price_factor},
         {"split_ratio", v.split_ratio},
         {"value_factor", v.value_factor}};
}
void from_json(const json& j, ValueFactor& v) {
    j.at("price_factor").get_to(v.price_factor);
    j.at("split_ratio").get_to(v.split_ratio);
    j.at("value_factor").get_to(v.value_factor);
}

void to_json(json& j, const BetaEstimate& b) {
    j = {{"beta", b.beta}, {"variant", b.variant}, {"n_obs", b.n_obs}};
}
void from_json(const json& j, BetaEstimate& b) {
    j.at("beta").get_to(b.beta);
    j.at("variant").get_to(b.variant);
    j.at("n_obs").get_to(b.n_obs);
}

void to_json(json& j, const AbnormalReturn& a) {
    j = {{"horizon", a.horizon},
         {"baseline", a.baseline},
         {"normal_return", a.normal_return},
         {"post_return", a.post_return},
         {"beta", a.beta},
         {"market_influenced_return", a.market_influenced_return},
         {"abnormal", a.abnormal}};
}
void from_json(const json& j, AbnormalReturn& a) {
    j.at("horizon").get_to(a.horizon);
    j.at("baseline").get_to(a.baseline);
    j.at("normal_return").get_to(a.normal_return);
    j.at("post_return").get_to(a.post_return);
    j.at("beta").get_to(a.beta);
    j.at("market_influenced_return").get_to(a.market_influenced_return);
    j.at("abnormal").get_to(a.abnormal);
}

void to_json(json& j, const IndexedYear& y) { j = json::array({y.year, y.value}); }
void from_json(const json& j, IndexedYear& y) {
    y.year = j.at(0).get<int>();
    y.value = j.at(1).get<double>();
}

void to_json(json& j, const IndexedProfitRow& r) {
    j = {{"ticker", r.ticker},
         {"split_year", r.split_year},
         {"final_year", r.final_year},
         {"values", r.values}};
    put(j, "total_diff", r.total_diff);
}
void from_json(const json& j, IndexedProfitRow& r) {
    j.at("ticker").get_to(r.ticker);
    j.at("split_year").get_to(r.split_year);
    j.at("final_year").get_to(r.final_year);
    j.at("values").get_to(r.values);
    get(j, "total_diff", r.total_diff);
}

void to_json(json& j, const RoeSummary& r) {
    j = {{"start_year", r.start_year}, {"end_year", r.end_year}, {"roe_start", r.roe_start},
         {"roe_end", r.roe_end},       {"change_pp", r.change_pp}};
}
void from_json(const json& j, RoeSummary& r) {
    j.at("start_year").get_to(r.start_year);
    j.at("end_year").get_to(r.end_year);
    j.at("roe_start").get_to(r.roe_start);
    j.at("roe_end").get_to(r.roe_end);
    j.at("change_pp").get_to(r.change_pp);
}

void to_json(json& j, const TrendConsistency& t) {
    j = {{"ticker", t.ticker},
         {"price_change_pct", t.price_change_pct},
         {"profit_change_pct", t.profit_change_pct},
         {"roe_change_pct", t.roe_change_pct},
         {"consistent", t.consistent}};
}
void from_json(const json& j, TrendConsistency& t) {
    j.at("ticker").get_to(t.ticker);
    j.at("price_change_pct").get_to(t.price_change_pct);
    j.at("profit_change_pct").get_to(t.profit_change_pct);
    j.at("roe_change_pct").get_to(t.roe_change_pct);
    j.at("consistent").get_to(t.consistent);
}

void to_json(json& j, const GapSeries& g) {
    j = {{"basis", g.basis}, {"range", g.range}, {"offsets", g.offsets}, {"gaps", g.gaps}};
    put(j, "mean_before", g.mean_before);
    put(j, "mean_after", g.mean_after);
}
void from_json(const json& j, GapSeries& g) {
    j.at("basis").get_to(g.basis);
    j.at("range").get_to(g.range);
    j.at("offsets").get_to(g.offsets);
    j.at("gaps").get_to(g.gaps);
    get(j, "mean_before", g.mean_before);
    get(j, "mean_after", g.mean_after);
}

void to_json(json& j, const SampleReport& s) {
    j = {{"sample_id", s.sample_id},
         {"event", s.event},
         {"degenerate_ratio", s.degenerate_ratio},
         {"window", s.window},
         {"coverage", s.coverage},
         {"price_basis", s.price_basis},
         {"volume_basis", s.volume_basis},
         {"daily_volume", s.daily_volume},
         {"daily_price", s.daily_price},
         {"price_changes", s.price_changes},
         {"abnormal", s.abnormal},
         {"abnormal_demarcation", s.abnormal_demarcation},
         {"notes", s.notes}};
    put(j, "volume_30", s.volume_30);
    put(j, "trend_before_30", s.trend_before_30);
    put(j, "trend_after_30", s.trend_after_30);
    put(j, "period_averages", s.period_averages);
    put(j, "value_6m", s.value_6m);
    put(j, "value_12m", s.value_12m);
    put(j, "beta", s.beta);
    put(j, "demarcation_price", s.demarcation_price);
    put(j, "indexed_profit", s.indexed_profit);
    put(j, "roe", s.roe);
    put(j, "consistency", s.consistency);
    put(j, "gap_raw_90", s.gap_raw_90);
    put(j, "gap_adjusted_90", s.gap_adjusted_90);
    put(j, "gap_raw_126", s.gap_raw_126);
    put(j, "gap_adjusted_126", s.gap_adjusted_126);
    put(j, "volume_90", s.volume_90);
    put(j, "volume_126", s.volume_126);
    put(j, "trend_pre_90", s.trend_pre_90);
    put(j, "trend_year", s.trend_year);
}
void from_json(const json& j, SampleReport& s) {
    j.at("sample_id").get_to(s.sample_id);
    j.at("event").get_to(s.event);
    j.at("degenerate_ratio").get_to(s.degenerate_ratio);
    j.at("window").get_to(s.window);
    j.at("coverage").get_to(s.coverage);
    j.at("price_basis").get_to(s.price_basis);
    j.at("volume_basis").get_to(s.volume_basis);
    j.at("daily_volume").get_to(s.daily_volume);
    j.at("daily_price").get_to(s.daily_price);
    j.at("price_changes").get_to(s.price_changes);
    j.at("abnormal").get_to(s.abnormal);
    j.at("abnormal_demarcation").get_to(s.abnormal_demarcation);
    j.at("notes").get_to(s.notes);
    get(j, "volume_30", s.volume_30);
    get(j, "trend_before_30", s.trend_before_30);
    get(j, "trend_after_30", s.trend_after_30);
    get(j, "period_averages", s.period_averages);
    get(j, "value_6m", s.value_6m);
    get(j, "value_12m", s.value_12m);
    get(j, "beta", s.beta);
    get(j, "demarcation_price", s.demarcation_price);
    get(j, "indexed_profit", s.indexed_profit);
    get(j, "roe", s.roe);
    get(j, "consistency", s.consistency);
    get(j, "gap_raw_90", s.gap_raw_90);
    get(j, "gap_adjusted_90", s.gap_adjusted_90);
    get(j, "gap_raw_126", s.gap_raw_126);
    get(j, "gap_adjusted_126", s.gap_adjusted_126);
    get(j, "volume_90", s.volume_90);
    get(j, "volume_126", s.volume_126);
    get(j, "trend_pre_90", s.trend_pre_90);
    get(j, "trend_year", s.trend_year);
}

void to_json(json& j, const Exclusion& e) { j = {{"sample_id", e.sample_id}, {"reason", e.reason}}; }
void from_json(const json& j, Exclusion& e) {
    j.at("sample_id").get_to(e.sample_id);
    j.at("reason").get_to(e.reason);
}

void to_json(json& j, const AggregateReport& a) {
    j = {{"n_samples", a.n_samples},
         {"n_excluded", a.n_excluded},
         {"n_consistent", a.n_consistent},
         {"n_inconsistent", a.n_inconsistent}};
    put(j, "volume_shares_30", a.volume_shares_30);
    put(j, "volume_shares_90", a.volume_shares_90);
}
void from_json(const json& j, AggregateReport& a) {
    j.at("n_samples").get_to(a.n_samples);
    j.at("n_excluded").get_to(a.n_excluded);
    j.at("n_consistent").get_to(a.n_consistent);
    j.at("n_inconsistent").get_to(a.n_inconsistent);
    get(j, "volume_shares_30", a.volume_shares_30);
    get(j, "volume_shares_90", a.volume_shares_90);
}

void to_json(json& j, const RunMetadata& m) {
    j = {{"engine_version", m.engine_version},
         {"input_digests", m.input_digests},
         {"config", m.config}};
    put(j, "timestamp", m.timestamp);
}
void from_json(const json& j, RunMetadata& m) {
    j.at("engine_version").get_to(m.engine_version);
    j.at("input_digests").get_to(m.input_digests);
    j.at("config").get_to(m.config);
    get(j, "timestamp", m.timestamp);
}

void to_json(json& j, const AnalysisReport& r) {
    j = {{"meta", r.meta},
         {"samples", r.samples},
         {"exclusions", r.exclusions},
         {"aggregate", r.aggregate}};
}
void from_json(const json& j, AnalysisReport& r) {
    j.at("meta").get_to(r.meta);
    j.at("samples").get_to(r.samples);
    j.at("exclusions").get_to(r.exclusions);
    j.at("aggregate").get_to(r.aggregate);
}

}  // namespace splitstudy
