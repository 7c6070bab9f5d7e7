#include "fou/stats.hpp"

#include "fou/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace fou::stats {

Summary summarize(std::span<const double> values) {
    Summary s;
    s.n = values.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n < 2) return s;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.n - 1);
    s.std_error = std::sqrt(s.variance / static_cast<double>(s.n));
    return s;
}

Summary summarize_squares(std::span<const double> values) {
    std::vector<double> squares(values.size());
    std::transform(values.begin(), values.end(), squares.begin(), [](double v) { return v * v; });
    return summarize(squares);
}

double median(std::span<const double> values) {
    if (values.empty()) throw DomainError("median of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_statistic_normal(std::span<const double> sample) {
    if (sample.empty()) throw DomainError("KS statistic of an empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = normal_cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_001(std::size_t n) noexcept {
    return 1.63 / std::sqrt(static_cast<double>(n));
}

} // namespace fou::stats
