#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "splitstudy/error.hpp"
#include "splitstudy/oracle.hpp"
#include "splitstudy/returns.hpp"
#include "splitstudy/synthetic.hpp"
#include "test_support.hpp"

namespace splitstudy {
namespace {

using testing::make_bars;
using testing::rel_err;
using testing::window_at;

std::vector<double> random_series(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> z(0.0, 0.02);
    std::vector<double> v(n);
    for (auto& x : v) x = z(rng);
    return v;
}

TEST(PctChangeSeries, Examples) {
    const std::vector<double> a{100, 110};
    const auto r = pct_change_series(a);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_DOUBLE_EQ(r[0], 0.10);
    const std::vector<double> flat(10, 7.0);
    for (double x : pct_change_series(flat)) EXPECT_EQ(x, 0.0);
    EXPECT_THROW(pct_change_series(std::vector<double>{1.0}), AnalysisError);
    EXPECT_THROW(pct_change_series(std::vector<double>{0.0, 1.0}), AnalysisError);
}

TEST(PctChangeSeries, MatchesLoop) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(1.0, 100.0);
    std::vector<double> v(50);
    for (auto& x : v) x = u(rng);
    const auto r = pct_change_series(v);
    ASSERT_EQ(r.size(), 49u);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) EXPECT_EQ(r[i], (v[i + 1] - v[i]) / v[i]);
}

TEST(Moments, ConstantAndOracle) {
    EXPECT_EQ(variance(std::vector<double>(20, 3.5)), 0.0);
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 199;
        const auto x = random_series(rng, n);
        const auto y = random_series(rng, n);
        const auto m = oracle::oracle_moments(x, y);
        EXPECT_LE(rel_err(variance(x), m.var_x), 1e-12);
        EXPECT_LE(rel_err(variance(y), m.var_y), 1e-12);
        // Covariance can sit near zero; compare against its natural scale.
        EXPECT_LE(std::abs(covariance(x, y) - m.cov) / std::sqrt(m.var_x * m.var_y), 1e-12);
    }
    const auto om = oracle::oracle_moments(std::vector<double>{1, 2, 4}, std::vector<double>{1, 2, 4});
    EXPECT_EQ(om.var_x, om.cov);
}

TEST(Beta, IdenticalSeriesIsOne) {
    std::mt19937_64 rng(43);
    const auto x = random_series(rng, 120);
    EXPECT_NEAR(beta(x, x).beta, 1.0, 1e-12);
    EXPECT_EQ(beta(x, x).n_obs, 120u);
}

TEST(Beta, OrthogonalSampleIsZero) {
    // x and y centred with zero cross product.
    const std::vector<double> x{1, -1, 1, -1};
    const std::vector<double> y{1, 1, -1, -1};
    EXPECT_NEAR(beta(x, y).beta, 0.0, 1e-12);
    EXPECT_NEAR(beta(x, y, BetaVariant::correlation).beta, 0.0, 1e-12);
}

// Property: adding constants changes nothing; scaling the stock by k divides
// beta by k; scaling the reference by k multiplies it by k.
TEST(Beta, ShiftAndScaleLaws) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::uniform_real_distribution<double> ku(0.1, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_series(rng, 60);
        auto r = random_series(rng, 60);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += 0.5 * s[i];
        const double b = beta(s, r).beta;
        const double c = u(rng), d = u(rng), k = ku(rng);
        auto s2 = s, r2 = r, sk = s, rk = r;
        for (auto& x : s2) x += c;
        for (auto& x : r2) x += d;
        for (auto& x : sk) x *= k;
        for (auto& x : rk) x *= k;
        EXPECT_LE(rel_err(beta(s2, r2).beta, b), 1e-9);
        EXPECT_LE(rel_err(beta(sk, r).beta, b / k), 1e-9);
        EXPECT_LE(rel_err(beta(s, rk).beta, b * k), 1e-9);
    }
}

TEST(Beta, CorrelationVariantUsesStockVariance) {
    std::mt19937_64 rng(53);
    const auto s = random_series(rng, 80);
    const auto r = random_series(rng, 80);
    EXPECT_LE(rel_err(beta(s, r, BetaVariant::correlation).beta, correlation(r, s) / variance(s)),
              1e-12);
}

TEST(Beta, Errors) {
    EXPECT_THROW(beta(std::vector<double>{0.1}, std::vector<double>{0.2}), AnalysisError);
    EXPECT_THROW(beta(std::vector<double>{0.1, 0.2}, std::vector<double>{0.2}), AnalysisError);
    EXPECT_THROW(beta(std::vector<double>{0.1, 0.1}, std::vector<double>{0.2, 0.3}), AnalysisError);
}

TEST(EstimateBeta, PairsByDateAndSkipsMissingRates) {
    synthetic::ScenarioSpec spec;
    spec.n_days = 300;
    spec.split_day = 150;
    spec.reference_noise = 0.0;
    const auto h = synthetic::generate_history(spec);
    const auto w = align_to_event(h.bars, h.event, 130, 130);
    const auto full = estimate_beta(w, h.rates);
    EXPECT_EQ(full.n_obs, 119u);
    // reference == realised adj return up to 4dp rounding of prices.
    EXPECT_NEAR(full.beta, 1.0, 1e-3);

    std::vector<RatePoint> thinned;
    for (std::size_t i = 0; i < h.rates.points().size(); ++i) {
        if (i % 2 == 0) thinned.push_back(h.rates.points()[i]);
    }
    const auto half = estimate_beta(w, ReferenceRateSeries(thinned));
    EXPECT_LT(half.n_obs, full.n_obs);
    EXPECT_GE(half.n_obs, 59u);
}

TEST(DemarcationPrice, Examples) {
    auto bars = make_bars(200, [](int i) { return i - 150 == -61 ? 10.0 : (i - 150 == -60 ? 12.0 : 50.0); },
                          [](int) { return 1; });
    EXPECT_DOUBLE_EQ(demarcation_price(window_at(bars, 150, 130, 40)), 11.0);
    auto flat = make_bars(200, [](int) { return 7.25; }, [](int) { return 1; });
    EXPECT_DOUBLE_EQ(demarcation_price(window_at(flat, 150, 130, 40)), 7.25);
    auto ramp = make_bars(200, [](int i) { return 100.0 + 0.5 * i; }, [](int) { return 1; });
    // Midpoint of offsets -61 and -60 on the ramp: row 89.5.
    EXPECT_DOUBLE_EQ(demarcation_price(window_at(ramp, 150, 130, 40)), 100.0 + 0.5 * 89.5);
}

ReferenceRateSeries zero_rates(const std::vector<TradingBar>& bars) {
    std::vector<RatePoint> pts;
    for (const auto& b : bars) pts.push_back({b.date, 0.0});
    return ReferenceRateSeries(pts);
}

TEST(AbnormalReturn, CancelsWhenPostTimesBetaEqualsNormal) {
    // normal = 12/10 = 1.2, post = 0.6 * 2 / 1 -> beta 1 gives 1.2.
    auto bars = make_bars(300, [](int i) {
        const int o = i - 150;
        if (o < -1) return 10.0;
        if (o == -1) return 12.0;
        if (o < 21) return 10.0;
        return 12.0;
    }, [](int) { return 1; });
    const auto w = window_at(bars, 150, 130, 130);
    const auto a = abnormal_return(w, zero_rates(bars), 21, {1.0, BetaVariant::covariance, 119});
    EXPECT_DOUBLE_EQ(a.normal_return, 1.2);
    EXPECT_DOUBLE_EQ(a.post_return, 1.2);
    EXPECT_EQ(a.abnormal, 0.0);
    EXPECT_EQ(a.abnormal, a.market_influenced_return - a.normal_return);
}

TEST(AbnormalReturn, OneMonthThirtyPointFiftyNine) {
    auto bars = make_bars(300, [](int i) { return i - 150 < 21 ? 10.0 : 13.059; },
                          [](int) { return 1; });
    const auto w = window_at(bars, 150, 130, 130);
    const auto a = abnormal_return(w, zero_rates(bars), 21, {1.0, BetaVariant::covariance, 119});
    EXPECT_NEAR(100.0 * a.abnormal, 30.59, 1e-9);
}

TEST(AbnormalReturn, HorizonZeroAndReferenceSource) {
    auto bars = make_bars(300, [](int i) { return 10.0 + 0.01 * i; }, [](int) { return 1; });
    const auto w = window_at(bars, 150, 130, 130);
    std::vector<RatePoint> pts;
    for (const auto& b : bars) pts.push_back({b.date, 0.01});
    const ReferenceRateSeries rates(pts);
    const BetaEstimate b{0.5, BetaVariant::covariance, 119};
    const auto a0 = abnormal_return(w, rates, 0, b);
    EXPECT_EQ(a0.post_return, 1.0);
    EXPECT_EQ(a0.market_influenced_return, 0.5);

    AbnormalReturnOptions ref;
    ref.post_source = PostReturnSource::reference;
    const auto a = abnormal_return(w, rates, 21, b, ref);
    EXPECT_NEAR(a.post_return, std::pow(1.01, 21), 1e-12);

    AbnormalReturnOptions dem;
    dem.baseline = Baseline::demarcation;
    const auto d = abnormal_return(w, rates, 21, b, dem);
    EXPECT_DOUBLE_EQ(d.normal_return, (10.0 + 0.01 * 149) / (10.0 + 0.01 * 89.5));

    EXPECT_THROW(abnormal_return(w, rates, 200, b), AnalysisError);
    EXPECT_THROW(abnormal_return(w, rates, -1, b), AnalysisError);
}

// Monte Carlo: drift shift s after the split with beta pinned to 1 gives
// E[abnormal] = (1 + s)^h - 1 since the pre-split walk is a martingale.
TEST(AbnormalReturn, RecoversInjectedDrift) {
    const double shift = 0.002;
    const int h = 21;
    const double expected = std::pow(1.0 + shift, h) - 1.0;
    synthetic::ScenarioSpec spec;
    spec.n_days = 300;
    spec.split_day = 150;
    spec.post_split_drift_shift = shift;
    const int n = 1000;
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < n; ++s) {
        spec.seed = synthetic::derive_seed(59, static_cast<std::uint64_t>(s));
        const auto hist = synthetic::generate_history(spec);
        const auto w = align_to_event(hist.bars, hist.event, 130, 130);
        const double a =
            abnormal_return(w, hist.rates, h, {1.0, BetaVariant::covariance, 119}).abnormal;
        sum += a;
        sum_sq += a * a;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    EXPECT_NEAR(mean, expected, 3.0 * se) << "se=" << se;
}

}  // namespace
}  // namespace splitstudy
