#pragma once

#include <span>

#include "splitstudy/event_window.hpp"
#include "splitstudy/price.hpp"
#include "splitstudy/stats.hpp"

namespace splitstudy {

inline constexpr int kBaselineDays = 120;
inline constexpr int kDefaultMonthDays = 21;

/// Gross return end / start between two offsets.
struct ReturnObservation {
    int period_start = 0;
    int period_end = 0;
    double gross_return = 1.0;
};

ReturnObservation gross_return(const EventWindow& window, int start, int end,
                               PriceField field = PriceField::adj_close,
                               int tolerance = kEndpointTolerance);

enum class BetaVariant { covariance, correlation };
const char* to_string(BetaVariant variant) noexcept;

struct BetaEstimate {
    double beta = 0.0;
    BetaVariant variant = BetaVariant::covariance;
    std::size_t n_obs = 0;

    friend bool operator==(const BetaEstimate&, const BetaEstimate&) = default;
};

/// covariance variant: Cov(reference, stock) / Var(stock)
/// correlation variant: Corr(reference, stock) / Var(stock)
/// The stock variance is the denominator in both. Throws AnalysisError on
/// length mismatch, fewer than two observations, or a constant stock series.
BetaEstimate beta(std::span<const double> stock_returns, std::span<const double> reference_returns,
                  BetaVariant variant = BetaVariant::covariance);

/// Stock returns over the window range paired by calendar date with the
/// reference series. A stock return is dated by the later of its two bars;
/// dates missing from `rates` are dropped.
struct PairedReturns {
    std::vector<double> stock;
    std::vector<double> reference;
};

PairedReturns paired_returns(const EventWindow& window, OffsetRange range,
                             const ReferenceRateSeries& rates,
                             PriceField field = PriceField::adj_close);

/// Beta over the pre-event baseline [-120, -1].
BetaEstimate estimate_beta(const EventWindow& window, const ReferenceRateSeries& rates,
                           BetaVariant variant = BetaVariant::covariance,
                           PriceField field = PriceField::adj_close);

struct DemarcationDays {
    int first = -61;
    int second = -60;
};

/// Mean price of the two midpoint bars of the 120-day baseline.
double demarcation_price(const EventWindow& window, PriceField field = PriceField::adj_close,
                         DemarcationDays days = {}, int tolerance = kEndpointTolerance);

enum class Baseline { period_start, demarcation };
const char* to_string(Baseline baseline) noexcept;

/// Whose post-event price path supplies the post-split gross return.
enum class PostReturnSource {
    stock,      // the stock's own price ratio P(h) / P(0)
    reference,  // compounded reference rates over the bars in (0, h]
};
const char* to_string(PostReturnSource source) noexcept;

struct AbnormalReturnOptions {
    Baseline baseline = Baseline::period_start;
    PostReturnSource post_source = PostReturnSource::stock;
    PriceField field = PriceField::adj_close;
    DemarcationDays demarcation{};
    int tolerance = kEndpointTolerance;
};

struct AbnormalReturn {
    int horizon = 0;
    Baseline baseline = Baseline::period_start;
    /// Baseline gross return P(-1) / P(start), start = -120 or demarcation.
    double normal_return = 1.0;
    /// Gross post-event return over [0, horizon] before the beta multiply.
    double post_return = 1.0;
    double beta = 0.0;
    double market_influenced_return = 0.0;
    double abnormal = 0.0;

    friend bool operator==(const AbnormalReturn&, const AbnormalReturn&) = default;
};

/// normal = baseline gross return, market_influenced = post gross * beta,
/// abnormal = market_influenced - normal.
AbnormalReturn abnormal_return(const EventWindow& window, const ReferenceRateSeries& rates,
                               int horizon_days, const BetaEstimate& beta_estimate,
                               const AbnormalReturnOptions& options = {});

}  // namespace splitstudy
