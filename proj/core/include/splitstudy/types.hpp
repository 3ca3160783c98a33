#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "splitstudy/date.hpp"

namespace splitstudy {

/// One trading day of OHLCV data for one ticker.
struct TradingBar {
    std::string ticker;
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double adj_close = 0.0;
    std::int64_t volume = 0;

    friend bool operator==(const TradingBar&, const TradingBar&) = default;
};

/// Throws InputError naming the first violated bar invariant.
void validate(const TradingBar& bar);

/// A split taking effect on `effective_date`; `ratio` is shares-after per
/// share-before (2 for a 2-for-1 split).
struct SplitEvent {
    std::string ticker;
    Date effective_date;
    double ratio = 1.0;

    /// Ratio 1 is accepted but carries no mechanical effect.
    bool degenerate() const noexcept { return ratio == 1.0; }

    friend bool operator==(const SplitEvent&, const SplitEvent&) = default;
};

struct FundamentalRecord {
    std::string ticker;
    int fiscal_year = 0;
    double net_profit = 0.0;
    double shareholders_equity = 0.0;

    friend bool operator==(const FundamentalRecord&, const FundamentalRecord&) = default;
};

struct RatePoint {
    Date date;
    double rate = 0.0;

    friend bool operator==(const RatePoint&, const RatePoint&) = default;
};

/// Daily simple returns of a reference series (risk-free rate or market
/// benchmark). Dates are strictly increasing.
class ReferenceRateSeries {
public:
    ReferenceRateSeries() = default;
    /// Throws InputError unless dates are strictly increasing.
    explicit ReferenceRateSeries(std::vector<RatePoint> points);

    const std::vector<RatePoint>& points() const noexcept { return points_; }
    bool empty() const noexcept { return points_.empty(); }
    std::size_t size() const noexcept { return points_.size(); }

    /// Rate on exactly `date`, or nullptr.
    const double* find(Date date) const noexcept;

    friend bool operator==(const ReferenceRateSeries&, const ReferenceRateSeries&) = default;

private:
    std::vector<RatePoint> points_;
};

enum class PriceField { adj_close, close };

inline double price_of(const TradingBar& bar, PriceField field) noexcept {
    return field == PriceField::adj_close ? bar.adj_close : bar.close;
}

const char* to_string(PriceField field) noexcept;

}  // namespace splitstudy

namespace splitstudy {

/// Everything one analysis run consumes.
struct Dataset {
    std::vector<TradingBar> bars;
    std::vector<SplitEvent> splits;
    std::vector<FundamentalRecord> fundamentals;
    ReferenceRateSeries rates;
};

}  // namespace splitstudy
