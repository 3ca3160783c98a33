#include "splitstudy/stats.hpp"

#include <cmath>

#include "splitstudy/error.hpp"

namespace splitstudy {
namespace {

void require_pairs(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw AnalysisError("series length mismatch");
    if (xs.size() < 2) throw AnalysisError("need at least two observations");
}

struct CoMoments {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double m2_x = 0.0;
    double m2_y = 0.0;
    double c_xy = 0.0;
    std::size_t n = 0;

    void push(double x, double y) noexcept {
        ++n;
        const double dx = x - mean_x;
        mean_x += dx / static_cast<double>(n);
        const double dy = y - mean_y;
        mean_y += dy / static_cast<double>(n);
        m2_x += dx * (x - mean_x);
        m2_y += dy * (y - mean_y);
        c_xy += dx * (y - mean_y);
    }
};

CoMoments co_moments(std::span<const double> xs, std::span<const double> ys) {
    CoMoments m;
    for (std::size_t i = 0; i < xs.size(); ++i) m.push(xs[i], ys[i]);
    return m;
}

}  // namespace

std::vector<double> pct_change_series(std::span<const double> values) {
    if (values.size() < 2) throw AnalysisError("percent change needs at least two values");
    std::vector<double> out;
    out.reserve(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i] == 0.0) {
            throw AnalysisError("percent change with zero denominator at index " +
                                std::to_string(i));
        }
        out.push_back((values[i + 1] - values[i]) / values[i]);
    }
    return out;
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw AnalysisError("mean of empty series");
    double m = 0.0;
    std::size_t n = 0;
    for (double x : xs) m += (x - m) / static_cast<double>(++n);
    return m;
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw AnalysisError("variance needs at least two observations");
    double m = 0.0;
    double m2 = 0.0;
    std::size_t n = 0;
    for (double x : xs) {
        ++n;
        const double d = x - m;
        m += d / static_cast<double>(n);
        m2 += d * (x - m);
    }
    return m2 / static_cast<double>(n);
}

double covariance(std::span<const double> xs, std::span<const double> ys) {
    require_pairs(xs, ys);
    const auto m = co_moments(xs, ys);
    return m.c_xy / static_cast<double>(m.n);
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
    require_pairs(xs, ys);
    const auto m = co_moments(xs, ys);
    if (m.m2_x == 0.0 || m.m2_y == 0.0) throw AnalysisError("correlation of a constant series");
    return m.c_xy / std::sqrt(m.m2_x * m.m2_y);
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    require_pairs(xs, ys);
    const auto m = co_moments(xs, ys);
    if (m.m2_x == 0.0) throw AnalysisError("line fit needs at least two distinct x values");
    LineFit fit;
    fit.slope = m.c_xy / m.m2_x;
    fit.intercept = m.mean_y - fit.slope * m.mean_x;
    return fit;
}

}  // namespace splitstudy
