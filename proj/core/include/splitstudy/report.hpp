#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "splitstudy/fundamentals.hpp"
#include "splitstudy/price.hpp"
#include "splitstudy/returns.hpp"
#include "splitstudy/volume.hpp"

namespace splitstudy {

struct SeriesPoint {
    int offset = 0;
    double value = 0.0;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

struct PriceChange {
    std::string label;  // e.g. "1m", "12m", "-4m..+4m"
    OffsetRange range;
    double pct = 0.0;

    friend bool operator==(const PriceChange&, const PriceChange&) = default;
};

struct RoeSummary {
    int start_year = 0;
    int end_year = 0;
    double roe_start = 0.0;
    double roe_end = 0.0;
    double change_pp = 0.0;

    friend bool operator==(const RoeSummary&, const RoeSummary&) = default;
};

/// Every metric for one split event. Optional members are absent when their
/// hypothesis was not selected or the metric was undefined for the data
/// (the reason then appears in `notes`).
struct SampleReport {
    std::string sample_id;  // TICKER@YYYY-MM-DD
    SplitEvent event;
    bool degenerate_ratio = false;
    OffsetRange window;
    double coverage = 0.0;
    std::string price_basis;   // adj_close | close
    std::string volume_basis;  // raw | adjusted

    // Volume effects, 30 trading days either side of the split.
    std::optional<VolumeComparison> volume_30;
    std::optional<TrendFit> trend_before_30;
    std::optional<TrendFit> trend_after_30;
    std::vector<SeriesPoint> daily_volume;  // [-126, +126]
    std::vector<SeriesPoint> daily_price;   // [-91, +91]
    std::optional<PeriodAverages> period_averages;

    // Information asymmetry.
    std::vector<PriceChange> price_changes;
    std::optional<ValueFactor> value_6m;
    std::optional<ValueFactor> value_12m;
    std::optional<BetaEstimate> beta;
    std::optional<double> demarcation_price;
    std::vector<AbnormalReturn> abnormal;
    std::vector<AbnormalReturn> abnormal_demarcation;
    std::optional<IndexedProfitRow> indexed_profit;
    std::optional<RoeSummary> roe;
    std::optional<TrendConsistency> consistency;

    // Liquidity.
    std::optional<GapSeries> gap_raw_90;
    std::optional<GapSeries> gap_adjusted_90;
    std::optional<GapSeries> gap_raw_126;
    std::optional<GapSeries> gap_adjusted_126;
    std::optional<VolumeComparison> volume_90;
    std::optional<VolumeComparison> volume_126;
    std::optional<TrendFit> trend_pre_90;
    std::optional<TrendFit> trend_year;

    std::vector<std::string> notes;

    friend bool operator==(const SampleReport&, const SampleReport&) = default;
};

struct Exclusion {
    std::string sample_id;
    std::string reason;

    friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct AggregateReport {
    std::size_t n_samples = 0;
    std::size_t n_excluded = 0;
    std::optional<VolumeShares> volume_shares_30;
    std::optional<VolumeShares> volume_shares_90;
    std::size_t n_consistent = 0;
    std::size_t n_inconsistent = 0;

    friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

struct RunMetadata {
    std::string engine_version;
    std::map<std::string, std::string> input_digests;
    std::map<std::string, std::string> config;
    /// Only present when pinned explicitly, so reruns stay byte-identical.
    std::optional<std::string> timestamp;

    friend bool operator==(const RunMetadata&, const RunMetadata&) = default;
};

struct AnalysisReport {
    RunMetadata meta;
    std::vector<SampleReport> samples;  // sorted by ticker, then date
    std::vector<Exclusion> exclusions;
    AggregateReport aggregate;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

void to_json(nlohmann::json& j, const AnalysisReport& r);
void from_json(const nlohmann::json& j, AnalysisReport& r);

}  // namespace splitstudy
