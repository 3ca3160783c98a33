#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splitstudy/types.hpp"

namespace splitstudy::synthetic {

/// Parameters of one synthetic price/volume history with a split.
///
/// Prices follow a multiplicative random walk
///   Q[t] = Q[t-1] * (1 + drift) * exp(vol * z - vol^2 / 2)
/// so E[Q[t] / Q[t-1]] = 1 + drift. Raw prices equal Q before `split_day`
/// and Q / split_ratio from it on; adj_close is Q / split_ratio throughout.
struct ScenarioSpec {
    std::uint64_t seed = 1;
    int n_days = 500;
    double initial_price = 50.0;
    double daily_drift = 0.0;
    double daily_vol = 0.015;
    /// Scale of the intraday high/low excursion around open/close.
    double range_vol = 0.01;
    std::int64_t base_volume = 1'000'000;
    double volume_noise = 0.25;
    /// Row index of the split day (offset 0).
    int split_day = 250;
    double split_ratio = 2.0;
    /// Multiplier on expected volume for offsets [1, boost_span].
    double announcement_volume_boost = 1.0;
    int boost_span = 30;
    /// Added to daily_drift for every offset >= 1.
    double post_split_drift_shift = 0.0;
    /// Raw share counts after the split scale with the ratio.
    bool mechanical_volume_scaling = true;
    /// Std dev of the noise separating the reference series from the stock.
    double reference_noise = 0.005;
    std::string ticker = "SYN";
    Date start_date{2013, 1, 2};
};

struct SyntheticHistory {
    std::vector<TradingBar> bars;
    SplitEvent event;
    /// Reference returns: the stock's realised adj_close return plus
    /// independent noise, dated like the bars (first bar has none).
    ReferenceRateSeries rates;
};

/// Deterministic for a given spec. Throws InputError on invalid parameters
/// and AnalysisError if a rounded price would be non-positive.
SyntheticHistory generate_history(const ScenarioSpec& spec);

/// Split ratios of the default nine-ticker universe.
inline const std::vector<double> kNineSampleRatios = {1.25, 1.1,   1.015, 1.068, 1.569,
                                                     2.0,  1.333, 1.011, 4.899};

struct UniverseSpec {
    std::uint64_t seed = 2013;
    int n_days = 500;
    std::vector<double> ratios = kNineSampleRatios;
    /// Split days are staggered from this row in steps of `split_stagger`.
    int first_split_day = 200;
    int split_stagger = 5;
    double daily_vol = 0.015;
    double reference_noise = 0.005;
};

/// Multi-ticker universe SYN1..SYNn on a shared weekday calendar with
/// fundamentals for split_year - 1 .. split_year + 3 and one reference series
/// (equal-weighted mean of the tickers' returns plus noise).
Dataset generate_universe(const UniverseSpec& spec);

/// SplitMix64 step; used to derive per-scenario seeds from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace splitstudy::synthetic
