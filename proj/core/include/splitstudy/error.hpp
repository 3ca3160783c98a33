#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace splitstudy {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: CSV rows, config files, CLI selectors.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
    InputError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

/// A computation is undefined for the data it was given (zero variance,
/// insufficient coverage, missing anchor bar, ...).
class AnalysisError : public Error {
public:
    using Error::Error;
};

/// The pipeline found nothing it could analyze.
class NoSamplesError : public Error {
public:
    using Error::Error;
};

/// An internal invariant was violated; indicates a bug rather than bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace splitstudy
