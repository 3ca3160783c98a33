#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "splitstudy/report.hpp"
#include "splitstudy/types.hpp"

namespace splitstudy {

enum class Hypothesis { h1, h2, h3, all };
enum class VolumeBasis { raw, adjusted };

const char* to_string(Hypothesis h) noexcept;
const char* to_string(VolumeBasis b) noexcept;

struct AnalysisOptions {
    Hypothesis hypothesis = Hypothesis::all;
    PriceField price_field = PriceField::adj_close;
    VolumeBasis volume_basis = VolumeBasis::raw;
    BetaVariant beta_variant = BetaVariant::covariance;
    PostReturnSource post_return = PostReturnSource::stock;
    int month_days = kDefaultMonthDays;
    double min_coverage = kDefaultMinCoverage;
    DemarcationDays demarcation{};
    /// Last fiscal year for indexed-profit total diffs; defaults to the
    /// latest year in the fundamentals input.
    std::optional<int> final_year;

    bool runs(Hypothesis h) const noexcept {
        return hypothesis == Hypothesis::all || hypothesis == h;
    }
    /// Trading-day window [-pre, +post] every sample must cover.
    OffsetRange required_window() const noexcept;
};

/// Runs every selected computation for every split event. Samples that
/// cannot be windowed are listed under exclusions. Throws NoSamplesError
/// when nothing is analyzable.
AnalysisReport analyze(const Dataset& data, const AnalysisOptions& options,
                       RunMetadata meta = {});

enum class EmitFormat { csv, json };

inline constexpr int kConfigVersion = 1;

/// A run: inputs, analysis options, and outputs. Built from a key = value
/// config file and/or CLI flags through set().
struct PipelineConfig {
    std::optional<std::filesystem::path> bars;
    std::optional<std::filesystem::path> splits;
    std::optional<std::filesystem::path> fundamentals;
    std::optional<std::filesystem::path> rates;
    /// Synthetic mode: generate the nine-sample universe from this seed
    /// instead of reading files.
    std::optional<std::uint64_t> seed;
    int synthetic_days = 500;
    AnalysisOptions options;
    std::optional<std::filesystem::path> out;
    std::vector<std::string> emit;
    EmitFormat format = EmitFormat::csv;
    std::optional<std::string> timestamp;

    /// Applies one key/value pair; throws InputError on unknown keys or bad
    /// values. Keys: version, bars, splits, fundamentals, rates, seed,
    /// synthetic_days, out, hypothesis, basis, volume_basis, beta_variant,
    /// post_return, month_days, min_coverage, demarcation, final_year,
    /// emit, format, timestamp.
    void set(std::string_view key, std::string_view value);

    /// Effective settings as key/value text, echoed into the report.
    std::map<std::string, std::string> echo() const;
};

/// Parses a config file: one `key = value` per line, `#` comments, and a
/// mandatory `version = 1` entry. Relative paths resolve against the
/// file's directory.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig parse_config(std::string_view text, const std::string& source = "<config>");

/// Loads inputs (or generates them in synthetic mode) and analyzes them.
AnalysisReport run_pipeline(const PipelineConfig& config);

/// Loads the dataset described by `config`.
Dataset load_dataset(const PipelineConfig& config);

std::string engine_version();

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

}  // namespace splitstudy
