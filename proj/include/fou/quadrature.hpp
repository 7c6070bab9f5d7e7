#pragma once

#include <cstddef>
#include <functional>

namespace fou::quad {

using Integrand = std::function<double(double)>;

struct Result {
    double value = 0.0;
    double abs_error = 0.0; // |Kronrod - Gauss| summed over the final partition
    std::size_t intervals = 0;
    bool converged = false;
};

/// Globally adaptive Gauss–Kronrod (7, 15) on [a, b]. The worst interval is
/// bisected until the summed error estimate is <= max(abs_tol, 1e-14·|value|)
/// or `max_intervals` is reached (then `converged` is false).
Result integrate(const Integrand& f, double a, double b, double abs_tol,
                 std::size_t max_intervals = 4000);

/// ∫_a^∞ f(x) dx through x = a + u/(1-u), u ∈ [0, 1).
Result integrate_to_infinity(const Integrand& f, double a, double abs_tol,
                             std::size_t max_intervals = 4000);

/// ∫_0^c x^{p-1} g(x) dx for p > 0 and g bounded near 0. The singular part
/// g(0)·c^p/p is taken in closed form; the remainder x^{p-1}(g(x) - g(0)) is
/// bounded and goes to the adaptive rule.
Result integrate_power_singular(const Integrand& g, double p, double c, double abs_tol,
                                std::size_t max_intervals = 4000);

} // namespace fou::quad
