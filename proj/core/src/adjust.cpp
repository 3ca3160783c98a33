#include "splitstudy/adjust.hpp"

#include <cmath>

namespace splitstudy {

double cumulative_split_factor(const std::string& ticker, Date date,
                               std::span<const SplitEvent> events) noexcept {
    double factor = 1.0;
    for (const auto& e : events) {
        if (e.ticker == ticker && date < e.effective_date) factor *= e.ratio;
    }
    return factor;
}

std::vector<TradingBar> split_adjust(std::span<const TradingBar> bars,
                                     std::span<const SplitEvent> events, AdjustMode mode) {
    std::vector<TradingBar> out(bars.begin(), bars.end());
    for (auto& bar : out) {
        const double factor = cumulative_split_factor(bar.ticker, bar.date, events);
        if (factor == 1.0) continue;
        bar.open /= factor;
        bar.high /= factor;
        bar.low /= factor;
        bar.close /= factor;
        bar.adj_close /= factor;
        if (mode == AdjustMode::prices_and_volume) {
            bar.volume = std::llround(static_cast<double>(bar.volume) * factor);
        }
    }
    return out;
}

}  // namespace splitstudy
