#include "splitstudy/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <tuple>

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

constexpr std::string_view kBarsHeader = "ticker,date,open,high,low,close,adj_close,volume";
constexpr std::string_view kSplitsHeader = "ticker,effective_date,ratio";
constexpr std::string_view kFundamentalsHeader =
    "ticker,fiscal_year,net_profit,shareholders_equity";
constexpr std::string_view kRatesHeader = "date,rate";

// Reads rows of a header-first CSV, handing each data row's fields and
// 1-based line number to `on_row`.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string source, std::string_view header)
        : in_(in), source_(std::move(source)) {
        std::string line;
        if (!next_line(line)) throw InputError(source_, 1, "missing header row");
        if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (line != header) {
            throw InputError(source_, line_no_,
                             "header mismatch: expected '" + std::string(header) + "'");
        }
        arity_ = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    }

    template <typename F>
    void for_each_row(F&& on_row) {
        std::string line;
        std::vector<std::string_view> fields;
        while (next_line(line)) {
            if (line.empty()) continue;
            fields.clear();
            std::string_view rest(line);
            for (;;) {
                auto comma = rest.find(',');
                fields.push_back(rest.substr(0, comma));
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            if (fields.size() != arity_) {
                fail("expected " + std::to_string(arity_) + " fields, got " +
                     std::to_string(fields.size()));
            }
            on_row(fields, line_no_);
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError(source_, line_no_, what);
    }

    double real(std::string_view field, const char* name) const {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() ||
            !std::isfinite(v)) {
            fail(std::string("malformed ") + name + " '" + std::string(field) + "'");
        }
        return v;
    }

    template <typename Int>
    Int integer(std::string_view field, const char* name) const {
        Int v = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
            fail(std::string("malformed ") + name + " '" + std::string(field) + "'");
        }
        return v;
    }

    Date date(std::string_view field) const {
        try {
            return Date::parse(field);
        } catch (const InputError& e) {
            fail(e.what());
        }
    }

    std::string ticker(std::string_view field) const {
        if (field.empty()) fail("empty ticker");
        return std::string(field);
    }

    const std::string& source() const noexcept { return source_; }

private:
    bool next_line(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    std::istream& in_;
    std::string source_;
    std::size_t line_no_ = 0;
    std::size_t arity_ = 0;
};

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return in;
}

// Sorts rows by key and rejects duplicates, reporting both line numbers.
template <typename Row, typename Key>
std::vector<Row> sort_unique(std::vector<std::pair<Row, std::size_t>> rows, Key key,
                             const std::string& source, const char* what) {
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const auto& a, const auto& b) { return key(a.first) < key(b.first); });
    std::vector<Row> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!out.empty() && key(out.back()) == key(rows[i].first)) {
            throw InputError(source, rows[i].second,
                             std::string("duplicate ") + what + " (first seen on line " +
                                 std::to_string(rows[i - 1].second) + ")");
        }
        out.push_back(std::move(rows[i].first));
    }
    return out;
}

}  // namespace

std::vector<TradingBar> parse_bars(std::istream& in, const std::string& source) {
    CsvReader reader(in, source, kBarsHeader);
    std::vector<std::pair<TradingBar, std::size_t>> rows;
    reader.for_each_row([&](const std::vector<std::string_view>& f, std::size_t line) {
        TradingBar bar;
        bar.ticker = reader.ticker(f[0]);
        bar.date = reader.date(f[1]);
        bar.open = reader.real(f[2], "open");
        bar.high = reader.real(f[3], "high");
        bar.low = reader.real(f[4], "low");
        bar.close = reader.real(f[5], "close");
        bar.adj_close = reader.real(f[6], "adj_close");
        bar.volume = reader.integer<std::int64_t>(f[7], "volume");
        try {
            validate(bar);
        } catch (const InputError& e) {
            reader.fail(e.what());
        }
        rows.emplace_back(std::move(bar), line);
    });
    return sort_unique(
        std::move(rows), [](const TradingBar& b) { return std::tie(b.ticker, b.date); }, source,
        "(ticker, date)");
}

std::vector<TradingBar> parse_bars(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_bars(in, path.string());
}

std::vector<SplitEvent> parse_splits(std::istream& in, const std::string& source) {
    CsvReader reader(in, source, kSplitsHeader);
    std::vector<std::pair<SplitEvent, std::size_t>> rows;
    reader.for_each_row([&](const std::vector<std::string_view>& f, std::size_t line) {
        SplitEvent event;
        event.ticker = reader.ticker(f[0]);
        event.effective_date = reader.date(f[1]);
        event.ratio = reader.real(f[2], "ratio");
        if (event.ratio <= 0.0) reader.fail("nonpositive split ratio '" + std::string(f[2]) + "'");
        rows.emplace_back(std::move(event), line);
    });
    return sort_unique(
        std::move(rows), [](const SplitEvent& e) { return std::tie(e.ticker, e.effective_date); },
        source, "(ticker, effective_date)");
}

std::vector<SplitEvent> parse_splits(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_splits(in, path.string());
}

std::vector<FundamentalRecord> parse_fundamentals(std::istream& in, const std::string& source) {
    CsvReader reader(in, source, kFundamentalsHeader);
    std::vector<std::pair<FundamentalRecord, std::size_t>> rows;
    reader.for_each_row([&](const std::vector<std::string_view>& f, std::size_t line) {
        FundamentalRecord r;
        r.ticker = reader.ticker(f[0]);
        r.fiscal_year = reader.integer<int>(f[1], "fiscal_year");
        r.net_profit = reader.real(f[2], "net_profit");
        r.shareholders_equity = reader.real(f[3], "shareholders_equity");
        rows.emplace_back(std::move(r), line);
    });
    return sort_unique(
        std::move(rows),
        [](const FundamentalRecord& r) { return std::tie(r.ticker, r.fiscal_year); }, source,
        "(ticker, fiscal_year)");
}

std::vector<FundamentalRecord> parse_fundamentals(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_fundamentals(in, path.string());
}

ReferenceRateSeries parse_rates(std::istream& in, const std::string& source) {
    CsvReader reader(in, source, kRatesHeader);
    std::vector<std::pair<RatePoint, std::size_t>> rows;
    reader.for_each_row([&](const std::vector<std::string_view>& f, std::size_t line) {
        rows.emplace_back(RatePoint{reader.date(f[0]), reader.real(f[1], "rate")}, line);
    });
    return ReferenceRateSeries(sort_unique(
        std::move(rows), [](const RatePoint& p) { return p.date; }, source, "date"));
}

ReferenceRateSeries parse_rates(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_rates(in, path.string());
}

std::string format_real(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_bars(std::ostream& out, const std::vector<TradingBar>& bars) {
    out << kBarsHeader << '\n';
    for (const auto& b : bars) {
        out << b.ticker << ',' << b.date.to_string() << ',' << format_real(b.open) << ','
            << format_real(b.high) << ',' << format_real(b.low) << ',' << format_real(b.close)
            << ',' << format_real(b.adj_close) << ',' << b.volume << '\n';
    }
}

void write_splits(std::ostream& out, const std::vector<SplitEvent>& events) {
    out << kSplitsHeader << '\n';
    for (const auto& e : events) {
        out << e.ticker << ',' << e.effective_date.to_string() << ',' << format_real(e.ratio)
            << '\n';
    }
}

void write_fundamentals(std::ostream& out, const std::vector<FundamentalRecord>& records) {
    out << kFundamentalsHeader << '\n';
    for (const auto& r : records) {
        out << r.ticker << ',' << r.fiscal_year << ',' << format_real(r.net_profit) << ','
            << format_real(r.shareholders_equity) << '\n';
    }
}

void write_rates(std::ostream& out, const ReferenceRateSeries& rates) {
    out << kRatesHeader << '\n';
    for (const auto& p : rates.points()) {
        out << p.date.to_string() << ',' << format_real(p.rate) << '\n';
    }
}

}  // namespace splitstudy
