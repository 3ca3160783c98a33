#include "splitstudy/returns.hpp"

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

EventWindow::Located require(const std::optional<EventWindow::Located>& hit, int offset,
                             int tolerance) {
    if (!hit) {
        throw AnalysisError("no bar within " + std::to_string(tolerance) +
                            " trading days of offset " + std::to_string(offset));
    }
    return *hit;
}

}  // namespace

ReturnObservation gross_return(const EventWindow& window, int start, int end, PriceField field,
                               int tolerance) {
    const auto s = window.nearest(start, tolerance);
    const auto e = window.nearest(end, tolerance);
    const auto first = require(s, start, tolerance);
    const auto last = require(e, end, tolerance);
    return {first.offset, last.offset, price_of(*last.bar, field) / price_of(*first.bar, field)};
}

const char* to_string(BetaVariant variant) noexcept {
    return variant == BetaVariant::covariance ? "covariance" : "correlation";
}

BetaEstimate beta(std::span<const double> stock_returns, std::span<const double> reference_returns,
                  BetaVariant variant) {
    if (stock_returns.size() != reference_returns.size()) {
        throw AnalysisError("beta: return series length mismatch");
    }
    if (stock_returns.size() < 2) throw AnalysisError("beta: need at least two observations");
    const double var_stock = variance(stock_returns);
    if (var_stock == 0.0) throw AnalysisError("beta: stock returns have zero variance");
    BetaEstimate out;
    out.variant = variant;
    out.n_obs = stock_returns.size();
    const double numerator = variant == BetaVariant::covariance
                                 ? covariance(reference_returns, stock_returns)
                                 : correlation(reference_returns, stock_returns);
    out.beta = numerator / var_stock;
    return out;
}

PairedReturns paired_returns(const EventWindow& window, OffsetRange range,
                             const ReferenceRateSeries& rates, PriceField field) {
    auto [first, last] = window.index_range(range);
    PairedReturns out;
    const auto bars = window.bars();
    for (std::size_t i = first + 1; i < last; ++i) {
        const double* rate = rates.find(bars[i].date);
        if (rate == nullptr) continue;
        const double prev = price_of(bars[i - 1], field);
        out.stock.push_back((price_of(bars[i], field) - prev) / prev);
        out.reference.push_back(*rate);
    }
    return out;
}

BetaEstimate estimate_beta(const EventWindow& window, const ReferenceRateSeries& rates,
                           BetaVariant variant, PriceField field) {
    const auto paired = paired_returns(window, {-kBaselineDays, -1}, rates, field);
    return beta(paired.stock, paired.reference, variant);
}

double demarcation_price(const EventWindow& window, PriceField field, DemarcationDays days,
                         int tolerance) {
    const auto a = require(window.nearest(days.first, tolerance), days.first, tolerance);
    const auto b = require(window.nearest(days.second, tolerance), days.second, tolerance);
    return 0.5 * (price_of(*a.bar, field) + price_of(*b.bar, field));
}

const char* to_string(Baseline baseline) noexcept {
    return baseline == Baseline::period_start ? "period_start" : "demarcation";
}

const char* to_string(PostReturnSource source) noexcept {
    return source == PostReturnSource::stock ? "stock" : "reference";
}

AbnormalReturn abnormal_return(const EventWindow& window, const ReferenceRateSeries& rates,
                               int horizon_days, const BetaEstimate& beta_estimate,
                               const AbnormalReturnOptions& options) {
    if (horizon_days < 0) throw AnalysisError("abnormal return horizon must be >= 0");
    if (window.span().lo > -kBaselineDays || window.span().hi < horizon_days) {
        throw AnalysisError("window too short for a " + std::to_string(kBaselineDays) +
                            "-day baseline and " + std::to_string(horizon_days) +
                            "-day horizon");
    }
    AbnormalReturn out;
    out.horizon = horizon_days;
    out.baseline = options.baseline;
    out.beta = beta_estimate.beta;

    const auto last_pre = require(window.nearest(-1, options.tolerance), -1, options.tolerance);
    const double end_price = price_of(*last_pre.bar, options.field);
    double start_price = 0.0;
    if (options.baseline == Baseline::period_start) {
        start_price = price_of(*require(window.nearest(-kBaselineDays, options.tolerance),
                                        -kBaselineDays, options.tolerance)
                                   .bar,
                               options.field);
    } else {
        start_price = demarcation_price(window, options.field, options.demarcation,
                                        options.tolerance);
    }
    out.normal_return = end_price / start_price;

    if (options.post_source == PostReturnSource::stock) {
        out.post_return =
            gross_return(window, 0, horizon_days, options.field, options.tolerance).gross_return;
    } else {
        auto [first, last] = window.index_range({1, horizon_days});
        double compounded = 1.0;
        for (std::size_t i = first; i < last; ++i) {
            const double* rate = rates.find(window.bars()[i].date);
            if (rate == nullptr) {
                throw AnalysisError("reference rate missing on " +
                                    window.bars()[i].date.to_string());
            }
            compounded *= 1.0 + *rate;
        }
        out.post_return = compounded;
    }
    out.market_influenced_return = out.post_return * out.beta;
    out.abnormal = out.market_influenced_return - out.normal_return;
    return out;
}

}  // namespace splitstudy
