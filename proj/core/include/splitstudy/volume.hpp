#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "splitstudy/event_window.hpp"

namespace splitstudy {

struct VolumeTotal {
    std::int64_t total = 0;
    OffsetRange range;
    /// Share of offsets in `range` that had a bar; missing days count as 0.
    double coverage = 0.0;
};

/// Sum of volumes over offsets [lo, hi]. Throws AnalysisError when lo > hi or
/// the range does not intersect the window span.
VolumeTotal window_volume_total(const EventWindow& window, int lo, int hi);

/// Before/after volume with "before" as the 100% benchmark.
struct VolumeComparison {
    std::int64_t before_total = 0;
    std::int64_t after_total = 0;
    /// 100 * after / before; absent when before_total is zero.
    std::optional<double> after_pct_of_before;
    OffsetRange before_range;
    OffsetRange after_range;
    double before_coverage = 1.0;
    double after_coverage = 1.0;

    friend bool operator==(const VolumeComparison&, const VolumeComparison&) = default;
};

VolumeComparison make_volume_comparison(std::int64_t before_total, std::int64_t after_total);

/// Compares [-span, -1] against [+1, +span]; the split day belongs to neither.
VolumeComparison compare_volume(const EventWindow& window, int span);

struct VolumeShares {
    double before_share = 0.0;
    double after_share = 0.0;

    friend bool operator==(const VolumeShares&, const VolumeShares&) = default;
};

/// Pooled shares sum(before) / sum(all) and sum(after) / sum(all).
/// Throws AnalysisError on an empty list or when every total is zero.
VolumeShares aggregate_volume_share(std::span<const VolumeComparison> comparisons);

struct TrendFit {
    double slope = 0.0;      // shares per trading day
    double intercept = 0.0;  // shares at offset 0
    /// 100 * slope / mean volume over the range; absent when the mean is 0.
    std::optional<double> normalized_slope_pct;
    OffsetRange range;
    std::size_t n_points = 0;

    friend bool operator==(const TrendFit&, const TrendFit&) = default;
};

/// OLS fit of volume against offset over bars present in [lo, hi].
TrendFit volume_trend(const EventWindow& window, int lo, int hi);

}  // namespace splitstudy
