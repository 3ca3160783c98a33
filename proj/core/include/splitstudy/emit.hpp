#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "splitstudy/pipeline.hpp"
#include "splitstudy/report.hpp"

namespace splitstudy {

/// Selector ids accepted by emit(): table1..table3, beta, value, fig1..fig16.
const std::vector<std::string>& all_selectors();

/// CSV for one selector. Percentages are printed with 2 decimals, ratios
/// and prices with 6 significant digits. Throws InputError on an unknown id.
std::string render_csv(const AnalysisReport& report, const std::string& selector);

/// The whole report as one JSON document (full double precision).
std::string render_json(const AnalysisReport& report);
AnalysisReport parse_report_json(std::string_view text);

/// Writes <selector>.csv per selector, or report.json for the json format.
/// Returns the paths written.
std::vector<std::filesystem::path> emit(const AnalysisReport& report, EmitFormat format,
                                        std::span<const std::string> selectors,
                                        const std::filesystem::path& out_dir);

}  // namespace splitstudy
