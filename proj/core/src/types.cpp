#include "splitstudy/types.hpp"

#include <algorithm>
#include <cmath>

#include "splitstudy/error.hpp"

namespace splitstudy {

void validate(const TradingBar& bar) {
    auto fail = [&](const std::string& what) {
        throw InputError(bar.ticker + " " + bar.date.to_string() + ": " + what);
    };
    if (bar.ticker.empty()) fail("empty ticker");
    for (double p : {bar.open, bar.high, bar.low, bar.close, bar.adj_close}) {
        if (!std::isfinite(p) || p <= 0.0) fail("prices must be finite and > 0");
    }
    if (bar.high < bar.low) fail("high < low");
    if (bar.low > std::min(bar.open, bar.close)) fail("low > min(open, close)");
    if (bar.high < std::max(bar.open, bar.close)) fail("high < max(open, close)");
    if (bar.volume < 0) fail("negative volume");
}

ReferenceRateSeries::ReferenceRateSeries(std::vector<RatePoint> points) : points_(std::move(points)) {
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i - 1].date < points_[i].date)) {
            throw InputError("reference rate dates must be strictly increasing at " +
                             points_[i].date.to_string());
        }
    }
}

const double* ReferenceRateSeries::find(Date date) const noexcept {
    auto it = std::lower_bound(points_.begin(), points_.end(), date,
                               [](const RatePoint& p, Date d) { return p.date < d; });
    if (it == points_.end() || it->date != date) return nullptr;
    return &it->rate;
}

const char* to_string(PriceField field) noexcept {
    return field == PriceField::adj_close ? "adj_close" : "close";
}

}  // namespace splitstudy
