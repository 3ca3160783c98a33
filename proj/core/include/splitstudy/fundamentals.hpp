#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitstudy/types.hpp"

namespace splitstudy {

struct IndexedYear {
    int year = 0;
    double value = 0.0;

    friend bool operator==(const IndexedYear&, const IndexedYear&) = default;
};

/// Net profit indexed so the split year equals 100. Loss years keep their
/// sign (a loss of 2.83x the split-year profit indexes to -283).
struct IndexedProfitRow {
    std::string ticker;
    int split_year = 0;
    std::vector<IndexedYear> values;  // split year onward, ascending
    /// Index at the final year minus 100; absent when that year is missing.
    std::optional<double> total_diff;
    int final_year = 0;

    std::optional<double> at(int year) const noexcept;

    friend bool operator==(const IndexedProfitRow&, const IndexedProfitRow&) = default;
};

/// `records` must all belong to one ticker. `final_year` defaults to the
/// latest year present. Throws AnalysisError when the split-year record is
/// missing or its profit is zero, or on mixed tickers.
IndexedProfitRow indexed_net_profit(std::span<const FundamentalRecord> records, int split_year,
                                    std::optional<int> final_year = std::nullopt);

/// net_profit / shareholders_equity. Throws AnalysisError on zero equity.
double roe(const FundamentalRecord& record);

/// 100 * (roe(end) - roe(start)), in percentage points.
double roe_change(const FundamentalRecord& start, const FundamentalRecord& end);

struct TrendConsistency {
    std::string ticker;
    double price_change_pct = 0.0;
    double profit_change_pct = 0.0;
    double roe_change_pct = 0.0;
    /// True unless two of the changes have strictly opposite signs.
    bool consistent = true;

    friend bool operator==(const TrendConsistency&, const TrendConsistency&) = default;
};

/// Throws AnalysisError on non-finite input.
TrendConsistency classify_consistency(double price_change_pct, double profit_change_pct,
                                      double roe_change_pct, std::string ticker = {});

}  // namespace splitstudy
