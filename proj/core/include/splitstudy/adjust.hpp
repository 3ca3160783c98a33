#pragma once

#include <span>
#include <vector>

#include "splitstudy/types.hpp"

namespace splitstudy {

enum class AdjustMode { prices, prices_and_volume };

/// Cumulative split factor that applies to a bar of `ticker` dated `date`:
/// the product of ratios of all events for that ticker with effective_date
/// strictly after `date`. Events for other tickers are ignored.
double cumulative_split_factor(const std::string& ticker, Date date,
                               std::span<const SplitEvent> events) noexcept;

/// Back-adjusts a raw feed for splits. Every bar strictly before an event's
/// effective date has open/high/low/close/adj_close divided by the cumulative
/// factor; in prices_and_volume mode the volume is multiplied by it (rounded
/// to the nearest share). Bars on or after the last event are unchanged.
///
/// The feed's adj_close is treated as one more raw price column; do not run
/// an already-adjusted feed through here.
std::vector<TradingBar> split_adjust(std::span<const TradingBar> bars,
                                     std::span<const SplitEvent> events, AdjustMode mode);

}  // namespace splitstudy
