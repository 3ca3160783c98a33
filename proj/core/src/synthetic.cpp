#include "splitstudy/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <tuple>

#include "splitstudy/error.hpp"

namespace splitstudy::synthetic {
namespace {

// Standard normals from mt19937_64 via Box-Muller. The engine's output
// sequence is fixed by the standard; std::normal_distribution is not, so
// the transform is done here to keep histories identical across toolchains.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    // Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

double round4(double x) { return std::round(x * 1e4) / 1e4; }

void check_spec(const ScenarioSpec& s) {
    auto fail = [](const std::string& what) { throw InputError("scenario: " + what); };
    if (s.n_days < 2) fail("n_days must be >= 2");
    if (s.split_day < 0 || s.split_day >= s.n_days) fail("split_day outside the history");
    if (!(s.initial_price > 0.0)) fail("initial_price must be > 0");
    if (!(s.split_ratio > 0.0)) fail("split_ratio must be > 0");
    if (s.daily_vol < 0.0 || s.range_vol < 0.0 || s.volume_noise < 0.0 || s.reference_noise < 0.0) {
        fail("volatilities must be >= 0");
    }
    if (s.base_volume < 1) fail("base_volume must be >= 1");
    if (!(s.announcement_volume_boost > 0.0)) fail("announcement_volume_boost must be > 0");
    if (s.boost_span < 0) fail("boost_span must be >= 0");
    if (!(1.0 + s.daily_drift > 0.0) || !(1.0 + s.daily_drift + s.post_split_drift_shift > 0.0)) {
        fail("drift must exceed -1");
    }
    if (!s.start_date.is_weekday()) fail("start_date must be a weekday");
    if (s.ticker.empty()) fail("empty ticker");
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

SyntheticHistory generate_history(const ScenarioSpec& spec) {
    check_spec(spec);
    NormalStream normals(spec.seed);
    SyntheticHistory out;
    out.bars.reserve(static_cast<std::size_t>(spec.n_days));
    std::vector<RatePoint> rates;
    rates.reserve(static_cast<std::size_t>(spec.n_days));

    const double vol = spec.daily_vol;
    const double vnoise = spec.volume_noise;
    double prev_q = spec.initial_price;
    double prev_adj = 0.0;
    Date date = spec.start_date;

    for (int t = 0; t < spec.n_days; ++t) {
        // Fixed draw order per day keeps the stream aligned whatever the parameters.
        const double z_price = normals.next();
        const double z_high = normals.next();
        const double z_low = normals.next();
        const double z_volume = normals.next();
        const double z_reference = normals.next();

        const int offset = t - spec.split_day;
        const double drift = spec.daily_drift + (offset >= 1 ? spec.post_split_drift_shift : 0.0);
        const double q = t == 0 ? spec.initial_price
                                : prev_q * (1.0 + drift) * std::exp(vol * z_price - 0.5 * vol * vol);
        const double open_q = t == 0 ? spec.initial_price : prev_q;
        const double high_q = std::max(open_q, q) * std::exp(spec.range_vol * std::abs(z_high));
        const double low_q = std::min(open_q, q) * std::exp(-spec.range_vol * std::abs(z_low));

        const double raw_scale = offset >= 0 ? 1.0 / spec.split_ratio : 1.0;
        TradingBar bar;
        bar.ticker = spec.ticker;
        bar.date = date;
        bar.open = round4(open_q * raw_scale);
        bar.high = round4(high_q * raw_scale);
        bar.low = round4(low_q * raw_scale);
        bar.close = round4(q * raw_scale);
        bar.adj_close = round4(q / spec.split_ratio);

        double expected_volume = static_cast<double>(spec.base_volume) *
                                 std::exp(vnoise * z_volume - 0.5 * vnoise * vnoise);
        if (offset >= 1 && offset <= spec.boost_span) expected_volume *= spec.announcement_volume_boost;
        if (offset >= 0 && spec.mechanical_volume_scaling) expected_volume *= spec.split_ratio;
        bar.volume = std::max<std::int64_t>(1, std::llround(expected_volume));

        if (bar.low <= 0.0 || bar.adj_close <= 0.0) {
            throw AnalysisError("scenario produced a non-positive price on day " +
                                std::to_string(t));
        }
        if (t > 0) {
            rates.push_back(
                {date, (bar.adj_close - prev_adj) / prev_adj + spec.reference_noise * z_reference});
        }
        prev_adj = bar.adj_close;
        prev_q = q;
        out.bars.push_back(std::move(bar));
        date = next_business_day(date);
    }
    out.event = SplitEvent{spec.ticker, out.bars[static_cast<std::size_t>(spec.split_day)].date,
                           spec.split_ratio};
    out.rates = ReferenceRateSeries(std::move(rates));
    return out;
}

Dataset generate_universe(const UniverseSpec& spec) {
    if (spec.ratios.empty()) throw InputError("universe needs at least one split ratio");
    Dataset data;
    std::vector<std::vector<double>> returns;
    std::vector<Date> dates;
    for (std::size_t i = 0; i < spec.ratios.size(); ++i) {
        ScenarioSpec s;
        s.seed = derive_seed(spec.seed, i);
        s.n_days = spec.n_days;
        s.initial_price = 20.0 + 5.0 * static_cast<double>(i);
        s.daily_vol = spec.daily_vol;
        s.split_day = spec.first_split_day + spec.split_stagger * static_cast<int>(i);
        s.split_ratio = spec.ratios[i];
        s.ticker = "SYN" + std::to_string(i + 1);
        auto h = generate_history(s);

        std::vector<double> r;
        r.reserve(h.bars.size());
        for (std::size_t t = 1; t < h.bars.size(); ++t) {
            r.push_back((h.bars[t].adj_close - h.bars[t - 1].adj_close) / h.bars[t - 1].adj_close);
        }
        returns.push_back(std::move(r));
        if (dates.empty()) {
            for (std::size_t t = 1; t < h.bars.size(); ++t) dates.push_back(h.bars[t].date);
        }

        // Fundamentals for split_year - 1 .. split_year + 2 as integer amounts.
        NormalStream fund(derive_seed(s.seed, 7));
        const int split_year = h.event.effective_date.year();
        double profit = std::round(1000.0 * std::exp(0.5 * fund.next()));
        double equity = std::round(std::abs(profit) * (8.0 + 4.0 * std::abs(fund.next())));
        for (int y = split_year - 1; y <= split_year + 2; ++y) {
            if (y == split_year && profit == 0.0) profit = 1.0;
            data.fundamentals.push_back({s.ticker, y, profit, std::max(1.0, equity)});
            profit = std::round(profit * (1.05 + 0.3 * fund.next()));
            equity = std::round(equity * (1.02 + 0.05 * fund.next()));
        }

        data.splits.push_back(h.event);
        data.bars.insert(data.bars.end(), std::make_move_iterator(h.bars.begin()),
                         std::make_move_iterator(h.bars.end()));
    }

    NormalStream noise(derive_seed(spec.seed, 1000));
    std::vector<RatePoint> market;
    market.reserve(dates.size());
    for (std::size_t t = 0; t < dates.size(); ++t) {
        double avg = 0.0;
        for (const auto& r : returns) avg += r[t];
        avg /= static_cast<double>(returns.size());
        market.push_back({dates[t], avg + spec.reference_noise * noise.next()});
    }
    data.rates = ReferenceRateSeries(std::move(market));

    std::sort(data.bars.begin(), data.bars.end(), [](const TradingBar& a, const TradingBar& b) {
        return std::tie(a.ticker, a.date) < std::tie(b.ticker, b.date);
    });
    std::sort(data.splits.begin(), data.splits.end(), [](const SplitEvent& a, const SplitEvent& b) {
        return std::tie(a.ticker, a.effective_date) < std::tie(b.ticker, b.effective_date);
    });
    std::sort(data.fundamentals.begin(), data.fundamentals.end(),
              [](const FundamentalRecord& a, const FundamentalRecord& b) {
                  return std::tie(a.ticker, a.fiscal_year) < std::tie(b.ticker, b.fiscal_year);
              });
    return data;
}

}  // namespace splitstudy::synthetic
