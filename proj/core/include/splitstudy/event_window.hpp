#pragma once

#include <optional>
#include <span>
#include <vector>

#include "splitstudy/types.hpp"

namespace splitstudy {

inline constexpr double kDefaultMinCoverage = 0.95;

/// Inclusive range of trading-day offsets relative to the split day.
struct OffsetRange {
    int lo = 0;
    int hi = 0;

    int length() const noexcept { return hi - lo + 1; }
    bool contains(int offset) const noexcept { return offset >= lo && offset <= hi; }
    friend bool operator==(const OffsetRange&, const OffsetRange&) = default;
};

/// Bars of one ticker re-indexed to trading-day offsets around a split.
///
/// Offsets count Monday-Friday business days from the anchor bar, which is
/// the earliest bar dated on or after the event's effective date (offset 0).
/// A missing trading day therefore leaves a hole in the offset sequence and
/// lowers coverage instead of silently shifting the window.
class EventWindow {
public:
    EventWindow(SplitEvent event, OffsetRange span, std::vector<TradingBar> bars,
                std::vector<int> offsets);

    const SplitEvent& event() const noexcept { return event_; }
    OffsetRange span() const noexcept { return span_; }
    std::span<const TradingBar> bars() const noexcept { return bars_; }
    std::span<const int> offsets() const noexcept { return offsets_; }
    std::size_t size() const noexcept { return bars_.size(); }

    /// Fraction of the requested offsets that carry a bar.
    double coverage() const noexcept;
    /// Fraction of offsets in `range` that carry a bar.
    double coverage(OffsetRange range) const noexcept;

    /// Bar at exactly `offset`, or nullptr.
    const TradingBar* at(int offset) const noexcept;

    struct Located {
        const TradingBar* bar;
        int offset;
    };
    /// Bar at `offset` or, failing that, the nearest bar within `tolerance`
    /// trading days (ties go to the earlier bar).
    std::optional<Located> nearest(int offset, int tolerance) const noexcept;

    /// Index range [first, last) of bars whose offsets fall in `range`.
    std::pair<std::size_t, std::size_t> index_range(OffsetRange range) const noexcept;

private:
    SplitEvent event_;
    OffsetRange span_;
    std::vector<TradingBar> bars_;
    std::vector<int> offsets_;
};

/// Cuts the window [-pre_days, +post_days] around `event` out of `bars`.
/// Bars of other tickers are skipped; `bars` must be sorted by (ticker, date)
/// as parse_bars returns them. Throws AnalysisError when no bar is dated on/after the effective
/// date, when coverage falls below `min_coverage`, or when a bar sits on a
/// weekend.
EventWindow align_to_event(std::span<const TradingBar> bars, const SplitEvent& event,
                           int pre_days, int post_days,
                           double min_coverage = kDefaultMinCoverage);

}  // namespace splitstudy
