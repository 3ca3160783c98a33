#pragma once

#include <cstdint>
#include <span>
#include <utility>

// Brute-force reference computations used to cross-check the analytics.
// Nothing here calls into the analytics code; each routine takes the most
// direct route (raw normal equations, two-pass moments, plain summation) in
// long double.
namespace splitstudy::oracle {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// (slope, intercept) from the raw-sum normal equations.
std::pair<double, double> oracle_ols(std::span<const Point> points);

struct Moments {
    double var_x = 0.0;
    double var_y = 0.0;
    double cov = 0.0;
};

/// Population moments, two-pass.
Moments oracle_moments(std::span<const double> xs, std::span<const double> ys);

std::int64_t oracle_sum(std::span<const std::int64_t> values);
double oracle_sum(std::span<const double> values);

}  // namespace splitstudy::oracle
