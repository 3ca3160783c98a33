#pragma once

#include <span>
#include <vector>

namespace splitstudy {

/// r[i] = (v[i+1] - v[i]) / v[i]. Throws AnalysisError on fewer than two
/// values or a zero denominator.
std::vector<double> pct_change_series(std::span<const double> values);

/// Population variance (divides by n), single-pass Welford update.
double variance(std::span<const double> xs);

/// Population covariance (divides by n), single-pass co-moment update.
double covariance(std::span<const double> xs, std::span<const double> ys);

/// Pearson correlation. Throws AnalysisError if either side is constant.
double correlation(std::span<const double> xs, std::span<const double> ys);

double mean(std::span<const double> xs);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares line y = intercept + slope * x using centred moments.
/// Throws AnalysisError on fewer than two points or constant x.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace splitstudy
