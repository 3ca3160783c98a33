#include "splitstudy/volume.hpp"

#include <vector>

#include "splitstudy/error.hpp"
#include "splitstudy/stats.hpp"

namespace splitstudy {

VolumeTotal window_volume_total(const EventWindow& window, int lo, int hi) {
    if (lo > hi) throw AnalysisError("volume range has lo > hi");
    const OffsetRange range{lo, hi};
    const OffsetRange span = window.span();
    if (hi < span.lo || lo > span.hi) {
        throw AnalysisError("volume range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            "] does not intersect the window");
    }
    auto [first, last] = window.index_range(range);
    VolumeTotal out;
    out.range = range;
    const auto bars = window.bars();
    for (std::size_t i = first; i < last; ++i) out.total += bars[i].volume;
    out.coverage = static_cast<double>(last - first) / range.length();
    return out;
}

VolumeComparison make_volume_comparison(std::int64_t before_total, std::int64_t after_total) {
    VolumeComparison c;
    c.before_total = before_total;
    c.after_total = after_total;
    if (before_total > 0) {
        c.after_pct_of_before =
            100.0 * static_cast<double>(after_total) / static_cast<double>(before_total);
    }
    return c;
}

VolumeComparison compare_volume(const EventWindow& window, int span) {
    if (span < 1) throw AnalysisError("volume comparison span must be >= 1");
    const auto before = window_volume_total(window, -span, -1);
    const auto after = window_volume_total(window, 1, span);
    auto c = make_volume_comparison(before.total, after.total);
    c.before_range = before.range;
    c.after_range = after.range;
    c.before_coverage = before.coverage;
    c.after_coverage = after.coverage;
    return c;
}

VolumeShares aggregate_volume_share(std::span<const VolumeComparison> comparisons) {
    if (comparisons.empty()) throw AnalysisError("no volume comparisons to aggregate");
    std::int64_t before = 0;
    std::int64_t after = 0;
    for (const auto& c : comparisons) {
        before += c.before_total;
        after += c.after_total;
    }
    const std::int64_t all = before + after;
    if (all == 0) throw AnalysisError("all volume totals are zero");
    VolumeShares s;
    s.before_share = static_cast<double>(before) / static_cast<double>(all);
    s.after_share = static_cast<double>(after) / static_cast<double>(all);
    return s;
}

TrendFit volume_trend(const EventWindow& window, int lo, int hi) {
    if (lo > hi) throw AnalysisError("trend range has lo > hi");
    const OffsetRange range{lo, hi};
    auto [first, last] = window.index_range(range);
    if (last - first < 2) throw AnalysisError("trend needs at least two bars in range");
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(last - first);
    ys.reserve(last - first);
    for (std::size_t i = first; i < last; ++i) {
        xs.push_back(window.offsets()[i]);
        ys.push_back(static_cast<double>(window.bars()[i].volume));
    }
    const auto line = fit_line(xs, ys);
    TrendFit fit;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.range = range;
    fit.n_points = xs.size();
    const double avg = mean(ys);
    if (avg != 0.0) fit.normalized_slope_pct = 100.0 * fit.slope / avg;
    return fit;
}

}  // namespace splitstudy
