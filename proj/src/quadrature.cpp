#include "fou/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace fou::quad {

namespace {

// QUADPACK qk15 abscissae (descending, last is the centre) and weights.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gauss_kronrod(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(centre - dx) + f(centre + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

Result integrate(const Integrand& f, double a, double b, double abs_tol,
                 std::size_t max_intervals) {
    if (a == b) return {0.0, 0.0, 0, true};
    std::priority_queue<Piece> pieces;
    Piece first = gauss_kronrod(f, a, b);
    double value = first.value;
    double error = first.error;
    pieces.push(first);
    auto target = [&] { return std::max(abs_tol, 1e-14 * std::abs(value)); };
    while (error > target() && pieces.size() < max_intervals) {
        const Piece worst = pieces.top();
        pieces.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval cannot be split further in double precision.
            pieces.push(worst);
            break;
        }
        const Piece left = gauss_kronrod(f, worst.a, mid);
        const Piece right = gauss_kronrod(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        pieces.push(left);
        pieces.push(right);
    }
    // Re-sum from the partition to shed the drift of the running updates.
    Result out;
    out.intervals = pieces.size();
    while (!pieces.empty()) {
        out.value += pieces.top().value;
        out.abs_error += pieces.top().error;
        pieces.pop();
    }
    out.converged = out.abs_error <= std::max(abs_tol, 1e-14 * std::abs(out.value));
    return out;
}

Result integrate_to_infinity(const Integrand& f, double a, double abs_tol,
                             std::size_t max_intervals) {
    const Integrand mapped = [&f, a](double u) {
        const double one_minus = 1.0 - u;
        const double x = a + u / one_minus;
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        return fx / (one_minus * one_minus);
    };
    return integrate(mapped, 0.0, 1.0, abs_tol, max_intervals);
}

Result integrate_power_singular(const Integrand& g, double p, double c, double abs_tol,
                                std::size_t max_intervals) {
    if (c <= 0.0) return {0.0, 0.0, 0, true};
    const double g0 = g(0.0);
    const double singular = g0 * std::pow(c, p) / p;
    const Integrand remainder = [&g, g0, p](double x) {
        return std::pow(x, p - 1.0) * (g(x) - g0);
    };
    Result out = integrate(remainder, 0.0, c, abs_tol, max_intervals);
    out.value += singular;
    return out;
}

} // namespace fou::quad
