#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "splitstudy/types.hpp"

namespace splitstudy {

// Readers expect UTF-8, comma-separated files with the exact header row
//   bars.csv          ticker,date,open,high,low,close,adj_close,volume
//   splits.csv        ticker,effective_date,ratio
//   fundamentals.csv  ticker,fiscal_year,net_profit,shareholders_equity
//   rates.csv         date,rate
// Errors are InputError carrying the 1-based line number.

/// Bars come back sorted by (ticker, date); duplicate keys are rejected.
std::vector<TradingBar> parse_bars(const std::filesystem::path& path);
std::vector<TradingBar> parse_bars(std::istream& in, const std::string& source = "<bars>");

/// Events come back sorted by (ticker, effective_date).
std::vector<SplitEvent> parse_splits(const std::filesystem::path& path);
std::vector<SplitEvent> parse_splits(std::istream& in, const std::string& source = "<splits>");

/// Records come back sorted by (ticker, fiscal_year); one per key.
std::vector<FundamentalRecord> parse_fundamentals(const std::filesystem::path& path);
std::vector<FundamentalRecord> parse_fundamentals(std::istream& in,
                                                  const std::string& source = "<fundamentals>");

ReferenceRateSeries parse_rates(const std::filesystem::path& path);
ReferenceRateSeries parse_rates(std::istream& in, const std::string& source = "<rates>");

// Writers emit the same schemas. Reals use the shortest representation that
// parses back to the identical double, so parse(write(x)) == x.
void write_bars(std::ostream& out, const std::vector<TradingBar>& bars);
void write_splits(std::ostream& out, const std::vector<SplitEvent>& events);
void write_fundamentals(std::ostream& out, const std::vector<FundamentalRecord>& records);
void write_rates(std::ostream& out, const ReferenceRateSeries& rates);

/// Shortest round-trip decimal text for a double.
std::string format_real(double value);

}  // namespace splitstudy
