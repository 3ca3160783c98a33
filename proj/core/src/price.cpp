#include "splitstudy/price.hpp"

#include <cmath>

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

double group_mean(const EventWindow& window, OffsetRange group, PriceField field,
                  const char* name) {
    auto [first, last] = window.index_range(group);
    if (first == last) throw AnalysisError(std::string("price group ") + name + " has no bars");
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) sum += price_of(window.bars()[i], field);
    return sum / static_cast<double>(last - first);
}

const TradingBar& endpoint(const EventWindow& window, int offset, int tolerance) {
    auto hit = window.nearest(offset, tolerance);
    if (!hit) {
        throw AnalysisError("no bar within " + std::to_string(tolerance) +
                            " trading days of offset " + std::to_string(offset));
    }
    return *hit->bar;
}

}  // namespace

PeriodAverages period_averages(const EventWindow& window, PriceField field,
                               const PriceGroups& groups) {
    PeriodAverages out;
    out.groups = groups;
    out.field = field;
    out.g1_avg = group_mean(window, groups.g1, field, "g1");
    out.g2_avg = group_mean(window, groups.g2, field, "g2");
    out.g3_avg = group_mean(window, groups.g3, field, "g3");
    return out;
}

double price_ratio(const EventWindow& window, int lo, int hi, PriceField field, int tolerance) {
    const double start = price_of(endpoint(window, lo, tolerance), field);
    const double end = price_of(endpoint(window, hi, tolerance), field);
    return end / start;
}

double price_change_pct(const EventWindow& window, int lo, int hi, PriceField field,
                        int tolerance) {
    const double start = price_of(endpoint(window, lo, tolerance), field);
    const double end = price_of(endpoint(window, hi, tolerance), field);
    return 100.0 * (end - start) / start;
}

ValueFactor value_factor(double price_factor, double split_ratio) {
    if (!(price_factor > 0.0) || !(split_ratio > 0.0)) {
        throw AnalysisError("value factor inputs must be > 0");
    }
    return ValueFactor{price_factor, split_ratio, price_factor * split_ratio};
}

const char* to_string(GapBasis basis) noexcept {
    return basis == GapBasis::raw ? "raw" : "split_adjusted";
}

GapSeries gap_series(const EventWindow& window, int lo, int hi, GapBasis basis) {
    if (lo > hi) throw AnalysisError("gap range has lo > hi");
    GapSeries out;
    out.basis = basis;
    out.range = {lo, hi};
    auto [first, last] = window.index_range(out.range);
    if (first == last) throw AnalysisError("gap range contains no bars");
    const auto& event = window.event();
    double sum_before = 0.0;
    double sum_after = 0.0;
    std::size_t n_before = 0;
    std::size_t n_after = 0;
    for (std::size_t i = first; i < last; ++i) {
        const auto& bar = window.bars()[i];
        const int off = window.offsets()[i];
        double gap = bar.high - bar.low;
        if (basis == GapBasis::split_adjusted && bar.date < event.effective_date) {
            gap /= event.ratio;
        }
        out.offsets.push_back(off);
        out.gaps.push_back(gap);
        if (off < 0) {
            sum_before += gap;
            ++n_before;
        } else if (off > 0) {
            sum_after += gap;
            ++n_after;
        }
    }
    if (n_before > 0) out.mean_before = sum_before / static_cast<double>(n_before);
    if (n_after > 0) out.mean_after = sum_after / static_cast<double>(n_after);
    return out;
}

}  // namespace splitstudy
