#pragma once

#include <cstddef>
#include <span>

namespace fou::stats {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double std_error = 0.0; // sqrt(variance / n)
};

/// Two-pass mean and unbiased variance, summed in index order.
Summary summarize(std::span<const double> values);

/// Summary of the squares v_i² (sample second moment and its standard error).
Summary summarize_squares(std::span<const double> values);

double median(std::span<const double> values);

double normal_cdf(double x) noexcept;

/// Kolmogorov–Smirnov distance sup_x |F_n(x) - Φ(x)| of the sample to N(0, 1).
double ks_statistic_normal(std::span<const double> sample);

/// Asymptotic α = 0.01 critical value 1.63/√n of the one-sample KS test.
double ks_critical_001(std::size_t n) noexcept;

} // namespace fou::stats
