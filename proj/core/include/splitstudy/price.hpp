#pragma once

#include <optional>
#include <vector>

#include "splitstudy/event_window.hpp"

namespace splitstudy {

inline constexpr int kEndpointTolerance = 3;

struct PriceGroups {
    OffsetRange g1{-91, -31};
    OffsetRange g2{-30, 30};
    OffsetRange g3{31, 91};

    friend bool operator==(const PriceGroups&, const PriceGroups&) = default;
};

struct PeriodAverages {
    double g1_avg = 0.0;
    double g2_avg = 0.0;
    double g3_avg = 0.0;
    PriceGroups groups;
    PriceField field = PriceField::adj_close;

    friend bool operator==(const PeriodAverages&, const PeriodAverages&) = default;
};

/// Mean price over each group. Throws AnalysisError if a group has no bars.
PeriodAverages period_averages(const EventWindow& window,
                               PriceField field = PriceField::adj_close,
                               const PriceGroups& groups = {});

/// 100 * (P(hi) - P(lo)) / P(lo). Endpoints snap to the nearest bar within
/// `tolerance` trading days; otherwise AnalysisError.
double price_change_pct(const EventWindow& window, int lo, int hi,
                        PriceField field = PriceField::adj_close,
                        int tolerance = kEndpointTolerance);

/// P(hi) / P(lo) with the same endpoint rule.
double price_ratio(const EventWindow& window, int lo, int hi, PriceField field,
                   int tolerance = kEndpointTolerance);

/// Market value algebra V = P * N: with N2 = N1 * split_ratio the value
/// factor V2 / V1 equals price_factor * split_ratio.
struct ValueFactor {
    double price_factor = 0.0;
    double split_ratio = 0.0;
    double value_factor = 0.0;

    friend bool operator==(const ValueFactor&, const ValueFactor&) = default;
};

/// Throws AnalysisError unless both inputs are > 0.
ValueFactor value_factor(double price_factor, double split_ratio);

enum class GapBasis { raw, split_adjusted };
const char* to_string(GapBasis basis) noexcept;

/// Daily high - low over a range of offsets.
struct GapSeries {
    GapBasis basis = GapBasis::raw;
    OffsetRange range;
    std::vector<int> offsets;
    std::vector<double> gaps;
    /// Mean over offsets < 0 and > 0 respectively; day 0 is in neither.
    std::optional<double> mean_before;
    std::optional<double> mean_after;

    friend bool operator==(const GapSeries&, const GapSeries&) = default;
};

/// On the split_adjusted basis, gaps of bars dated before the effective date
/// are divided by the event's ratio, removing the mechanical 1/ratio drop.
/// The window is expected to hold raw (unadjusted) high/low prices.
GapSeries gap_series(const EventWindow& window, int lo, int hi, GapBasis basis);

}  // namespace splitstudy
