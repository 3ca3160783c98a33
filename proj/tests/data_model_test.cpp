#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "splitstudy/adjust.hpp"
#include "splitstudy/csv_io.hpp"
#include "splitstudy/error.hpp"
#include "splitstudy/event_window.hpp"
#include "splitstudy/synthetic.hpp"
#include "test_support.hpp"

namespace splitstudy {
namespace {

using testing::make_bars;

constexpr const char* kBarsHeader = "ticker,date,open,high,low,close,adj_close,volume\n";

TEST(Date, ParsesAndPrintsIso) {
    const Date d = Date::parse("2013-06-03");
    EXPECT_EQ(d.to_string(), "2013-06-03");
    EXPECT_EQ(d.year(), 2013);
    EXPECT_TRUE(d.is_weekday());
    EXPECT_THROW(Date::parse("2013-6-3"), InputError);
    EXPECT_THROW(Date::parse("2013-02-30"), InputError);
    EXPECT_THROW(Date::parse("20130603xx"), InputError);
}

TEST(Date, BusinessDaysSkipWeekends) {
    const Date fri(2013, 6, 7);
    const Date mon(2013, 6, 10);
    EXPECT_EQ(business_days_between(fri, mon), 1);
    EXPECT_EQ(business_days_between(mon, fri), -1);
    EXPECT_EQ(business_days_between(mon, Date(2013, 6, 17)), 5);
    EXPECT_EQ(next_business_day(fri), mon);
    // Brute force over two years of weekday pairs.
    Date a(2012, 12, 31);
    for (int i = 0; i < 40; ++i, a = next_business_day(a)) {
        Date b = a;
        for (int k = 0; k < 300; ++k) {
            EXPECT_EQ(business_days_between(a, b), k);
            EXPECT_EQ(business_days_between(b, a), -k);
            b = next_business_day(b);
        }
    }
}

TEST(ParseBars, SingleRowMapsFields) {
    std::istringstream in(std::string(kBarsHeader) + "X,2013-06-03,10,11,9,10.5,10.5,1000\n");
    const auto bars = parse_bars(in);
    ASSERT_EQ(bars.size(), 1u);
    EXPECT_EQ(bars[0].ticker, "X");
    EXPECT_EQ(bars[0].date, Date(2013, 6, 3));
    EXPECT_EQ(bars[0].open, 10.0);
    EXPECT_EQ(bars[0].high, 11.0);
    EXPECT_EQ(bars[0].low, 9.0);
    EXPECT_EQ(bars[0].close, 10.5);
    EXPECT_EQ(bars[0].adj_close, 10.5);
    EXPECT_EQ(bars[0].volume, 1000);
}

TEST(ParseBars, RejectsHighBelowLowWithLineNumber) {
    std::istringstream in(std::string(kBarsHeader) + "X,2013-06-03,10,11,9,10.5,10.5,1000\n" +
                          "X,2013-06-04,10,9,10,10,10,1000\n");
    try {
        parse_bars(in, "bars.csv");
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("high < low"), std::string::npos) << e.what();
    }
}

TEST(ParseBars, RejectsMalformedInput) {
    auto parse = [](const std::string& body) {
        std::istringstream in(std::string(kBarsHeader) + body);
        return parse_bars(in);
    };
    EXPECT_THROW(parse("X,2013-06-03,10,11,9,10.5,10.5,-5\n"), InputError);
    EXPECT_THROW(parse("X,2013-06-03,10,11,9,10.5,10.5\n"), InputError);
    EXPECT_THROW(parse("X,2013-06-03,ten,11,9,10.5,10.5,1\n"), InputError);
    EXPECT_THROW(parse("X,2013-06-03,10,11,9,10.5,10.5,1.5\n"), InputError);
    EXPECT_THROW(parse("X,2013-06-03,0,11,9,10.5,10.5,1\n"), InputError);
    EXPECT_THROW(parse("X,2013-06-03,10,11,9,10.5,10.5,1\nX,2013-06-03,10,11,9,10.5,10.5,1\n"),
                 InputError);
    std::istringstream bad_header("ticker,date,open\nX,2013-06-03,1\n");
    EXPECT_THROW(parse_bars(bad_header), InputError);
}

TEST(ParseBars, SortsByTickerThenDate) {
    std::istringstream in(std::string(kBarsHeader) + "B,2013-06-04,1,1,1,1,1,1\r\n" +
                          "A,2013-06-05,1,1,1,1,1,1\n" + "A,2013-06-04,1,1,1,1,1,1\n\n");
    const auto bars = parse_bars(in);
    ASSERT_EQ(bars.size(), 3u);
    EXPECT_EQ(bars[0].ticker, "A");
    EXPECT_EQ(bars[0].date, Date(2013, 6, 4));
    EXPECT_EQ(bars[1].date, Date(2013, 6, 5));
    EXPECT_EQ(bars[2].ticker, "B");
}

TEST(ParseBars, SyntheticHistoryKeepsCountAndOrder) {
    synthetic::ScenarioSpec spec;
    spec.n_days = 183;
    spec.split_day = 91;
    const auto h = synthetic::generate_history(spec);
    std::stringstream buf;
    write_bars(buf, h.bars);
    const auto bars = parse_bars(buf);
    ASSERT_EQ(bars.size(), 183u);
    for (std::size_t i = 1; i < bars.size(); ++i) EXPECT_LT(bars[i - 1].date, bars[i].date);
    EXPECT_EQ(bars, h.bars);
}

TEST(ParseSplits, NineSampleRatios) {
    std::string body = "ticker,effective_date,ratio\n";
    const char* ratios[] = {"1.25", "1.1", "1.015", "1.068", "1.569", "2", "1.333", "1.011", "4.899"};
    for (int i = 0; i < 9; ++i) {
        body += "S" + std::to_string(i + 1) + ",2013-0" + std::to_string(i + 1) + "-10," +
                ratios[i] + "\n";
    }
    std::istringstream in(body);
    const auto events = parse_splits(in);
    ASSERT_EQ(events.size(), 9u);
    for (std::size_t i = 0; i < 9; ++i) {
        EXPECT_EQ(events[i].ratio, synthetic::kNineSampleRatios[i]);
    }
}

TEST(ParseSplits, RejectsNonPositiveRatio) {
    std::istringstream zero("ticker,effective_date,ratio\nX,2013-06-03,0\n");
    EXPECT_THROW(parse_splits(zero), InputError);
    std::istringstream neg("ticker,effective_date,ratio\nX,2013-06-03,-2\n");
    EXPECT_THROW(parse_splits(neg), InputError);
    std::istringstream one("ticker,effective_date,ratio\nX,2013-06-03,1\n");
    EXPECT_TRUE(parse_splits(one).front().degenerate());
}

TEST(ParseFundamentals, RejectsDuplicateYear) {
    std::istringstream in(
        "ticker,fiscal_year,net_profit,shareholders_equity\nX,2013,5,100\nX,2013,6,100\n");
    try {
        parse_fundamentals(in);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ParseRates, SortsAndRejectsDuplicates) {
    std::istringstream in("date,rate\n2013-01-03,0.01\n2013-01-02,-0.002\n");
    const auto rates = parse_rates(in);
    ASSERT_EQ(rates.size(), 2u);
    EXPECT_EQ(rates.points()[0].date, Date(2013, 1, 2));
    ASSERT_NE(rates.find(Date(2013, 1, 3)), nullptr);
    EXPECT_EQ(*rates.find(Date(2013, 1, 3)), 0.01);
    EXPECT_EQ(rates.find(Date(2013, 1, 4)), nullptr);
    std::istringstream dup("date,rate\n2013-01-03,0.01\n2013-01-03,0.02\n");
    EXPECT_THROW(parse_rates(dup), InputError);
}

// Property: write then parse is lossless for randomly generated valid files.
TEST(CsvRoundTrip, RandomFilesAreLossless) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.01, 1000.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<TradingBar> bars;
        Date d(2013, 1, 2);
        for (int i = 0; i < 20; ++i) {
            const double o = u(rng), c = u(rng);
            bars.push_back({"T" + std::to_string(trial % 3), d, o, std::max(o, c) * 1.1,
                            std::min(o, c) * 0.9, c, u(rng), static_cast<std::int64_t>(rng() % 1000000)});
            d = next_business_day(d);
        }
        std::vector<SplitEvent> splits{{"T", Date(2014, 5, 1), u(rng)}};
        std::vector<FundamentalRecord> funds{{"T", 2013, -u(rng), u(rng)}, {"T", 2014, u(rng), u(rng)}};
        ReferenceRateSeries rates({{Date(2013, 1, 2), u(rng) - 500.0}, {Date(2013, 1, 3), 1e-17}});

        std::stringstream b, s, f, r;
        write_bars(b, bars);
        write_splits(s, splits);
        write_fundamentals(f, funds);
        write_rates(r, rates);
        EXPECT_EQ(parse_bars(b), bars);
        EXPECT_EQ(parse_splits(s), splits);
        EXPECT_EQ(parse_fundamentals(f), funds);
        EXPECT_EQ(parse_rates(r), rates);
    }
}

TEST(SplitAdjust, TwoForOneHalvesPreSplitPrices) {
    auto bars = make_bars(4, [](int i) { return i < 2 ? 10.0 : 5.0; }, [](int) { return 100; });
    const SplitEvent e{"TST", bars[2].date, 2.0};
    const auto adj = split_adjust(bars, std::span(&e, 1), AdjustMode::prices);
    EXPECT_EQ(adj[0].close, 5.0);
    EXPECT_EQ(adj[1].adj_close, 5.0);
    EXPECT_EQ(adj[0].volume, 100);
    EXPECT_EQ(adj[2], bars[2]);
    EXPECT_EQ(adj[3], bars[3]);
}

TEST(SplitAdjust, RatioOneIsIdentity) {
    auto bars = make_bars(5, [](int i) { return 10.0 + i; }, [](int i) { return 100 + i; });
    const SplitEvent e{"TST", bars[2].date, 1.0};
    EXPECT_EQ(split_adjust(bars, std::span(&e, 1), AdjustMode::prices_and_volume), bars);
}

TEST(SplitAdjust, StackedEventsCompose) {
    // Hand-composed: ratio 2 on row 2, ratio 3 on row 4.
    // rows 0-1 divide by 6, rows 2-3 by 3, row 4 unchanged.
    auto bars = make_bars(5, [](int) { return 60.0; }, [](int) { return 10; });
    const std::vector<SplitEvent> events{{"TST", bars[2].date, 2.0}, {"TST", bars[4].date, 3.0}};
    const auto adj = split_adjust(bars, events, AdjustMode::prices_and_volume);
    const double expected_close[] = {10.0, 10.0, 20.0, 20.0, 60.0};
    const std::int64_t expected_volume[] = {60, 60, 30, 30, 10};
    for (int i = 0; i < 5; ++i) {
        EXPECT_DOUBLE_EQ(adj[i].close, expected_close[i]) << i;
        EXPECT_EQ(adj[i].volume, expected_volume[i]) << i;
    }
    // Sequential application agrees with the joint one.
    const auto seq = split_adjust(split_adjust(bars, std::span(&events[0], 1), AdjustMode::prices),
                                  std::span(&events[1], 1), AdjustMode::prices);
    const auto joint = split_adjust(bars, events, AdjustMode::prices);
    for (std::size_t i = 0; i < bars.size(); ++i) {
        EXPECT_NEAR(seq[i].close, joint[i].close, 1e-12 * joint[i].close);
    }
}

TEST(SplitAdjust, IgnoresOtherTickers) {
    auto bars = make_bars(3, [](int) { return 10.0; }, [](int) { return 1; });
    const SplitEvent e{"OTHER", bars[2].date, 2.0};
    EXPECT_EQ(split_adjust(bars, std::span(&e, 1), AdjustMode::prices), bars);
}

// Property: notional close * volume is preserved up to share rounding.
TEST(SplitAdjust, PreservesNotional) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> price(1.0, 500.0);
    std::uniform_real_distribution<double> ratio(1.001, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto bars = make_bars(30, [&](int) { return price(rng); },
                              [&](int) { return static_cast<std::int64_t>(rng() % 5'000'000); });
        const std::vector<SplitEvent> events{{"TST", bars[10].date, ratio(rng)},
                                             {"TST", bars[20].date, ratio(rng)}};
        const auto adj = split_adjust(bars, events, AdjustMode::prices_and_volume);
        for (std::size_t i = 0; i < bars.size(); ++i) {
            const double before = bars[i].close * static_cast<double>(bars[i].volume);
            const double after = adj[i].close * static_cast<double>(adj[i].volume);
            EXPECT_LE(std::abs(before - after), adj[i].close * 0.5 + 1e-9 * before);
        }
    }
}

TEST(AlignToEvent, FullWindowOf183Bars) {
    auto bars = make_bars(300, [](int) { return 10.0; }, [](int) { return 1; });
    const auto w = testing::window_at(bars, 150, 91, 91, 2.0, 0.95);
    EXPECT_EQ(w.size(), 183u);
    EXPECT_DOUBLE_EQ(w.coverage(), 1.0);
    EXPECT_EQ(w.offsets().front(), -91);
    EXPECT_EQ(w.offsets().back(), 91);
    EXPECT_EQ(w.at(0)->date, bars[150].date);
}

TEST(AlignToEvent, ZeroLengthWindowIsTheSplitBar) {
    auto bars = make_bars(10, [](int i) { return 10.0 + i; }, [](int) { return 1; });
    const auto w = testing::window_at(bars, 4, 0, 0);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w.offsets()[0], 0);
    EXPECT_EQ(w.bars()[0].close, 14.0);
}

TEST(AlignToEvent, WeekendEffectiveDateAnchorsOnNextTradingDay) {
    auto bars = make_bars(20, [](int i) { return 10.0 + i; }, [](int) { return 1; });
    const SplitEvent e{"TST", Date(2013, 1, 5), 2.0};  // Saturday
    const auto w = align_to_event(bars, e, 2, 2, 0.0);
    EXPECT_EQ(w.at(0)->date, Date(2013, 1, 7));
    EXPECT_EQ(w.at(-1)->date, Date(2013, 1, 4));
}

TEST(AlignToEvent, CannotAnchorAfterLastBar) {
    auto bars = make_bars(10, [](int) { return 10.0; }, [](int) { return 1; });
    const SplitEvent e{"TST", Date(2014, 1, 1), 2.0};
    EXPECT_THROW(align_to_event(bars, e, 1, 1, 0.0), AnalysisError);
}

TEST(AlignToEvent, GappedSeriesFailsCoverage) {
    auto bars = make_bars(400, [](int) { return 10.0; }, [](int) { return 1; });
    std::vector<TradingBar> gapped;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        if (i == 200 || i % 5 != 0) gapped.push_back(bars[i]);  // drop every 5th day
    }
    const SplitEvent e{"TST", bars[200].date, 2.0};
    EXPECT_THROW(align_to_event(gapped, e, 91, 91, 0.95), AnalysisError);
    const auto w = align_to_event(gapped, e, 91, 91, 0.5);
    EXPECT_NEAR(w.coverage(), 147.0 / 183.0, 1e-12);
}

TEST(AlignToEvent, PartialWindowAtSeriesEdge) {
    auto bars = make_bars(100, [](int) { return 10.0; }, [](int) { return 1; });
    const auto w = testing::window_at(bars, 95, 10, 10, 2.0, 0.7);
    EXPECT_EQ(w.size(), 15u);
    EXPECT_NEAR(w.coverage(), 15.0 / 21.0, 1e-12);
    EXPECT_THROW(testing::window_at(bars, 95, 10, 10, 2.0, 0.95), AnalysisError);
}

// Property: offsets strictly increase and contain 0, whatever rows are missing.
TEST(AlignToEvent, OffsetsStrictlyIncreasingWithZero) {
    std::mt19937_64 rng(11);
    auto bars = make_bars(250, [](int) { return 10.0; }, [](int) { return 1; });
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<TradingBar> kept;
        const std::size_t anchor = 60 + rng() % 120;
        for (std::size_t i = 0; i < bars.size(); ++i) {
            if (i == anchor || rng() % 4 != 0) kept.push_back(bars[i]);
        }
        const SplitEvent e{"TST", bars[anchor].date, 2.0};
        const auto w = align_to_event(kept, e, 50, 50, 0.0);
        ASSERT_NE(w.at(0), nullptr);
        for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LT(w.offsets()[i - 1], w.offsets()[i]);
        EXPECT_GE(w.coverage(), 0.0);
        EXPECT_LE(w.coverage(), 1.0);
    }
}

TEST(EventWindow, NearestPrefersExactThenEarlier) {
    auto bars = make_bars(30, [](int i) { return 1.0 + i; }, [](int) { return 1; });
    std::vector<TradingBar> kept;
    for (std::size_t i = 0; i < bars.size(); ++i) {
        if (i != 10) kept.push_back(bars[i]);
    }
    const SplitEvent e{"TST", bars[15].date, 2.0};
    const auto w = align_to_event(kept, e, 15, 14, 0.0);
    EXPECT_EQ(w.nearest(-5, 3)->offset, -6);  // -5 missing; -6 and -4 tie, earlier wins
    EXPECT_EQ(w.nearest(-4, 3)->offset, -4);
    EXPECT_FALSE(w.nearest(-40, 3).has_value());
}

}  // namespace
}  // namespace splitstudy
