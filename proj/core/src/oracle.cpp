#include "splitstudy/oracle.hpp"

#include <stdexcept>

namespace splitstudy::oracle {

std::pair<double, double> oracle_ols(std::span<const Point> points) {
    if (points.size() < 2) throw std::invalid_argument("oracle_ols: need two points");
    long double n = static_cast<long double>(points.size());
    long double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : points) {
        sx += p.x;
        sy += p.y;
        sxx += static_cast<long double>(p.x) * p.x;
        sxy += static_cast<long double>(p.x) * p.y;
    }
    const long double denom = n * sxx - sx * sx;
    if (denom == 0) throw std::invalid_argument("oracle_ols: constant x");
    const long double slope = (n * sxy - sx * sy) / denom;
    const long double intercept = (sy - slope * sx) / n;
    return {static_cast<double>(slope), static_cast<double>(intercept)};
}

Moments oracle_moments(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("oracle_moments: need equal lengths >= 2");
    }
    const long double n = static_cast<long double>(xs.size());
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    long double vx = 0, vy = 0, c = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const long double dx = xs[i] - mx;
        const long double dy = ys[i] - my;
        vx += dx * dx;
        vy += dy * dy;
        c += dx * dy;
    }
    return {static_cast<double>(vx / n), static_cast<double>(vy / n), static_cast<double>(c / n)};
}

std::int64_t oracle_sum(std::span<const std::int64_t> values) {
    std::int64_t total = 0;
    for (auto v : values) total += v;
    return total;
}

double oracle_sum(std::span<const double> values) {
    long double total = 0;
    for (auto v : values) total += v;
    return static_cast<double>(total);
}

}  // namespace splitstudy::oracle
