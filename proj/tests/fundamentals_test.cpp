#include <gtest/gtest.h>

#include <random>

#include "splitstudy/error.hpp"
#include "splitstudy/fundamentals.hpp"

namespace splitstudy {
namespace {

std::vector<FundamentalRecord> profits(std::initializer_list<double> values, int first_year = 2013) {
    std::vector<FundamentalRecord> out;
    int y = first_year;
    for (double v : values) out.push_back({"X", y++, v, 1000.0});
    return out;
}

TEST(IndexedNetProfit, Examples) {
    const auto a = indexed_net_profit(profits({1000, 1769.7}), 2013);
    EXPECT_EQ(*a.at(2013), 100.0);
    EXPECT_EQ(*a.at(2014), 176.97);
    EXPECT_EQ(*a.total_diff, 76.97);

    const auto b = indexed_net_profit(profits({200, 707.88}), 2013);
    EXPECT_EQ(*b.at(2014), 353.94);

    const auto flat = indexed_net_profit(profits({5, 5, 5}), 2013);
    for (const auto& v : flat.values) EXPECT_EQ(v.value, 100.0);

    const auto loss = indexed_net_profit(profits({100, -282.94}), 2013);
    EXPECT_EQ(*loss.at(2014), -282.94);
}

TEST(IndexedNetProfit, SkipsPreSplitYearsAndHonoursFinalYear) {
    const auto r = indexed_net_profit(profits({50, 100, 150, 120}, 2012), 2013, 2014);
    ASSERT_EQ(r.values.size(), 3u);
    EXPECT_EQ(r.values.front().year, 2013);
    EXPECT_EQ(r.final_year, 2014);
    EXPECT_EQ(*r.total_diff, 50.0);
    EXPECT_FALSE(r.at(2012).has_value());

    const auto missing = indexed_net_profit(profits({100, 150}), 2013, 2016);
    EXPECT_FALSE(missing.total_diff.has_value());
}

TEST(IndexedNetProfit, Errors) {
    EXPECT_THROW(indexed_net_profit(profits({0, 10}), 2013), AnalysisError);
    EXPECT_THROW(indexed_net_profit(profits({10, 10}), 2020), AnalysisError);
    auto mixed = profits({10, 10});
    mixed[1].ticker = "Y";
    EXPECT_THROW(indexed_net_profit(mixed, 2013), AnalysisError);
}

// Property: the index is linear in the profit vector's scale and keeps signs.
TEST(IndexedNetProfit, ScaleFreeAndSignPreserving) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<FundamentalRecord> recs, scaled;
        const double k = std::ldexp(1.0, static_cast<int>(rng() % 20));
        for (int y = 0; y < 4; ++y) {
            double v = u(rng);
            if (y == 0 && v == 0.0) v = 1.0;
            recs.push_back({"X", 2013 + y, v, 1.0});
            scaled.push_back({"X", 2013 + y, v * k, 1.0});
        }
        const auto a = indexed_net_profit(recs, 2013);
        const auto b = indexed_net_profit(scaled, 2013);
        EXPECT_EQ(a.values.front().value, 100.0);
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            EXPECT_EQ(a.values[i].value, b.values[i].value);
            EXPECT_EQ(std::signbit(a.values[i].value),
                      std::signbit(recs[i].net_profit) != std::signbit(recs[0].net_profit));
        }
    }
}

TEST(Roe, Examples) {
    EXPECT_DOUBLE_EQ(roe({"X", 2013, 9, 100}), 0.09);
    EXPECT_THROW(roe({"X", 2013, 9, 0}), AnalysisError);
    EXPECT_NEAR(roe_change({"X", 2013, 5, 100}, {"X", 2014, 14, 100}), 9.0, 1e-12);
    EXPECT_EQ(roe_change({"X", 2013, 5, 100}, {"X", 2014, 5, 100}), 0.0);
}

TEST(ClassifyConsistency, Examples) {
    EXPECT_TRUE(classify_consistency(165.5, 299.29, 9, "S1").consistent);
    EXPECT_FALSE(classify_consistency(13, -20, -1, "S3").consistent);
    EXPECT_TRUE(classify_consistency(0, 0, 0).consistent);
    EXPECT_TRUE(classify_consistency(-3, 0, -1).consistent);
    EXPECT_FALSE(classify_consistency(-3, 0, 1).consistent);
    const auto c = classify_consistency(1, 2, 3, "T");
    EXPECT_EQ(c.ticker, "T");
    EXPECT_EQ(c.roe_change_pct, 3.0);
    EXPECT_THROW(classify_consistency(NAN, 0, 0), AnalysisError);
}

// Property: flipping every sign preserves the verdict.
TEST(ClassifyConsistency, SignFlipSymmetry) {
    std::mt19937_64 rng(67);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int i = 0; i < 500; ++i) {
        const double a = d(rng), b = d(rng), c = d(rng);
        EXPECT_EQ(classify_consistency(a, b, c).consistent,
                  classify_consistency(-a, -b, -c).consistent);
        const bool pos = a >= 0 && b >= 0 && c >= 0;
        const bool neg = a <= 0 && b <= 0 && c <= 0;
        EXPECT_EQ(classify_consistency(a, b, c).consistent, pos || neg);
    }
}

}  // namespace
}  // namespace splitstudy
