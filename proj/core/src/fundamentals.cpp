#include "splitstudy/fundamentals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

// Rounds to 15 significant digits, the precision a decimal survives a trip
// through double. Indexes of exact-decimal profits then come out as the
// double nearest the exact decimal answer instead of one ulp off.
double decimal_round(long double v) {
    const double d = static_cast<double>(v);
    if (!std::isfinite(d) || d == 0.0) return d;
    char buf[64];
    const auto end = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::scientific,
                                   std::numeric_limits<double>::digits10 - 1)
                         .ptr;
    double out = d;
    std::from_chars(buf, end, out);
    return out;
}

}  // namespace

std::optional<double> IndexedProfitRow::at(int year) const noexcept {
    for (const auto& v : values) {
        if (v.year == year) return v.value;
    }
    return std::nullopt;
}

IndexedProfitRow indexed_net_profit(std::span<const FundamentalRecord> records, int split_year,
                                    std::optional<int> final_year) {
    if (records.empty()) throw AnalysisError("no fundamentals records");
    const std::string& ticker = records.front().ticker;
    const FundamentalRecord* base = nullptr;
    int latest = split_year;
    for (const auto& r : records) {
        if (r.ticker != ticker) throw AnalysisError("fundamentals span several tickers");
        if (r.fiscal_year == split_year) base = &r;
        latest = std::max(latest, r.fiscal_year);
    }
    if (base == nullptr) {
        throw AnalysisError(ticker + ": no fundamentals for split year " +
                            std::to_string(split_year));
    }
    if (base->net_profit == 0.0) {
        throw AnalysisError(ticker + ": split-year net profit is zero");
    }

    IndexedProfitRow row;
    row.ticker = ticker;
    row.split_year = split_year;
    row.final_year = final_year.value_or(latest);
    for (const auto& r : records) {
        if (r.fiscal_year < split_year) continue;
        const double value =
            r.fiscal_year == split_year
                ? 100.0
                : decimal_round(100.0L * r.net_profit / base->net_profit);
        row.values.push_back({r.fiscal_year, value});
    }
    std::sort(row.values.begin(), row.values.end(),
              [](const IndexedYear& a, const IndexedYear& b) { return a.year < b.year; });
    if (auto v = row.at(row.final_year)) row.total_diff = decimal_round(*v - 100.0L);
    return row;
}

double roe(const FundamentalRecord& record) {
    if (record.shareholders_equity == 0.0) {
        throw AnalysisError(record.ticker + " " + std::to_string(record.fiscal_year) +
                            ": zero shareholders' equity");
    }
    return record.net_profit / record.shareholders_equity;
}

double roe_change(const FundamentalRecord& start, const FundamentalRecord& end) {
    return 100.0 * (roe(end) - roe(start));
}

TrendConsistency classify_consistency(double price_change_pct, double profit_change_pct,
                                      double roe_change_pct, std::string ticker) {
    if (!std::isfinite(price_change_pct) || !std::isfinite(profit_change_pct) ||
        !std::isfinite(roe_change_pct)) {
        throw AnalysisError("consistency inputs must be finite");
    }
    const bool any_positive = price_change_pct > 0 || profit_change_pct > 0 || roe_change_pct > 0;
    const bool any_negative = price_change_pct < 0 || profit_change_pct < 0 || roe_change_pct < 0;
    return TrendConsistency{std::move(ticker), price_change_pct, profit_change_pct,
                            roe_change_pct, !(any_positive && any_negative)};
}

}  // namespace splitstudy
