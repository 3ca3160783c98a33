#include "splitstudy/event_window.hpp"

#include <algorithm>
#include <cstdio>

#include "splitstudy/error.hpp"

namespace splitstudy {

EventWindow::EventWindow(SplitEvent event, OffsetRange span, std::vector<TradingBar> bars,
                         std::vector<int> offsets)
    : event_(std::move(event)), span_(span), bars_(std::move(bars)), offsets_(std::move(offsets)) {
    if (bars_.size() != offsets_.size()) throw InvariantError("window bars/offsets size mismatch");
    for (std::size_t i = 1; i < offsets_.size(); ++i) {
        if (offsets_[i - 1] >= offsets_[i] || !(bars_[i - 1].date < bars_[i].date)) {
            throw InvariantError("window offsets and dates must be strictly increasing");
        }
    }
}

double EventWindow::coverage() const noexcept { return coverage(span_); }

double EventWindow::coverage(OffsetRange range) const noexcept {
    if (range.length() <= 0) return 0.0;
    auto [first, last] = index_range(range);
    return static_cast<double>(last - first) / range.length();
}

std::pair<std::size_t, std::size_t> EventWindow::index_range(OffsetRange range) const noexcept {
    auto first = std::lower_bound(offsets_.begin(), offsets_.end(), range.lo);
    auto last = std::upper_bound(first, offsets_.end(), range.hi);
    return {static_cast<std::size_t>(first - offsets_.begin()),
            static_cast<std::size_t>(last - offsets_.begin())};
}

const TradingBar* EventWindow::at(int offset) const noexcept {
    auto it = std::lower_bound(offsets_.begin(), offsets_.end(), offset);
    if (it == offsets_.end() || *it != offset) return nullptr;
    return &bars_[static_cast<std::size_t>(it - offsets_.begin())];
}

std::optional<EventWindow::Located> EventWindow::nearest(int offset,
                                                          int tolerance) const noexcept {
    for (int d = 0; d <= tolerance; ++d) {
        if (const auto* b = at(offset - d)) return Located{b, offset - d};
        if (d > 0) {
            if (const auto* b = at(offset + d)) return Located{b, offset + d};
        }
    }
    return std::nullopt;
}

EventWindow align_to_event(std::span<const TradingBar> bars, const SplitEvent& event,
                           int pre_days, int post_days, double min_coverage) {
    if (pre_days < 0 || post_days < 0) {
        throw AnalysisError("window lengths must be non-negative");
    }
    auto first = std::find_if(bars.begin(), bars.end(),
                              [&](const TradingBar& b) { return b.ticker == event.ticker; });
    auto last = std::find_if(first, bars.end(),
                             [&](const TradingBar& b) { return b.ticker != event.ticker; });
    std::span<const TradingBar> series(first, last);

    auto anchor = std::lower_bound(
        series.begin(), series.end(), event.effective_date,
        [](const TradingBar& b, Date d) { return b.date < d; });
    if (anchor == series.end()) {
        throw AnalysisError("cannot anchor " + event.ticker + ": no bar on or after " +
                            event.effective_date.to_string());
    }
    const Date anchor_date = anchor->date;
    const OffsetRange span{-pre_days, post_days};

    std::vector<TradingBar> picked;
    std::vector<int> offsets;
    for (const auto& bar : series) {
        if (!bar.date.is_weekday()) {
            throw AnalysisError(event.ticker + " has a bar on a non-trading day " +
                                bar.date.to_string());
        }
        const int off = business_days_between(anchor_date, bar.date);
        if (span.contains(off)) {
            picked.push_back(bar);
            offsets.push_back(off);
        }
    }
    EventWindow window(event, span, std::move(picked), std::move(offsets));
    if (window.coverage() < min_coverage) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "coverage %.4f below minimum %.4f", window.coverage(),
                      min_coverage);
        throw AnalysisError(event.ticker + " " + event.effective_date.to_string() + ": " + buf);
    }
    return window;
}

}  // namespace splitstudy
