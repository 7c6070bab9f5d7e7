#include "fou/fou.hpp"

#include "fou/error.hpp"
#include "fou/kernels/kernels.hpp"
#include "fou/quadrature.hpp"
#include "fou/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fou {

FouParams::FouParams(double theta_, double sigma_, HurstParameter h_)
    : theta(theta_), sigma(sigma_), h(h_) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("theta must be positive, got " + std::to_string(theta));
    }
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("sigma must be positive, got " + std::to_string(sigma));
    }
}

std::string_view to_string(FouScheme scheme) noexcept {
    switch (scheme) {
    case FouScheme::EulerLangevin: return "euler";
    case FouScheme::IntegratingFactor: return "integrating-factor";
    case FouScheme::MidpointIntegratingFactor: return "midpoint";
    }
    return "unknown";
}

SamplePath simulate_fou(const FouParams& params, const SamplePath& fbm, FouScheme scheme) {
    if (fbm.label != PathLabel::Fbm) throw DomainError("simulate_fou expects an fBm path");
    if (!(fbm.hurst == params.h)) {
        throw DomainError("fBm path was generated with a different Hurst parameter");
    }
    if (fbm.values.size() != fbm.grid.size()) {
        throw DomainError("path length does not match its grid");
    }
    const double delta = fbm.grid.delta();
    const double theta_delta = params.theta * delta;

    double decay = 0.0;
    double noise_weight = 0.0;
    switch (scheme) {
    case FouScheme::EulerLangevin:
        if (theta_delta >= 1.0) {
            throw SchemeUnstable("Euler–Langevin step needs theta*delta < 1, got " +
                                 std::to_string(theta_delta));
        }
        decay = 1.0 - theta_delta;
        noise_weight = params.sigma;
        break;
    case FouScheme::IntegratingFactor:
        decay = std::exp(-theta_delta);
        noise_weight = params.sigma * decay;
        break;
    case FouScheme::MidpointIntegratingFactor:
        decay = std::exp(-theta_delta);
        noise_weight = params.sigma * std::exp(-0.5 * theta_delta);
        break;
    }

    const std::vector<double>& b = fbm.values;
    std::vector<double> x(b.size());
    x[0] = 0.0;
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        x[k + 1] = decay * x[k] + noise_weight * (b[k + 1] - b[k]);
    }
    return SamplePath{fbm.grid, std::move(x), PathLabel::Fou, fbm.hurst};
}

double stationary_second_moment(const FouParams& params) {
    const double h = params.h.value();
    if (h < 0.5) throw DomainError("stationary_second_moment requires H >= 1/2");
    return params.sigma * params.sigma * std::pow(params.theta, -2.0 * h) * h *
           gamma_fn(2.0 * h);
}

double fou_covariance(const FouParams& params, double s, double t, double tol) {
    const double h = params.h.value();
    if (!(h > 0.5)) throw DomainError("fou_covariance requires H > 1/2");
    if (s < 0.0 || t < 0.0) throw DomainError("fou_covariance requires s, t >= 0");
    if (s > t) std::swap(s, t);
    if (s == 0.0) return 0.0;

    const double theta = params.theta;
    const double p = 2.0 * h - 1.0; // kernel is w^{p-1}
    const double prefactor = params.sigma * params.sigma * h * p;
    const double outer_tol = tol / prefactor;
    const double inner_tol = outer_tol / (4.0 * std::max(1.0, s));

    // I(u) = ∫_0^t e^{-θ(t-v)} |u-v|^{p-1} dv for 0 <= u <= s <= t.
    auto inner = [&](double u) {
        // v < u, w = u - v ∈ (0, u]: e^{-θ(t-u)} e^{-θw} w^{p-1}
        const double shift = std::exp(-theta * (t - u));
        const quad::Result left = quad::integrate_power_singular(
            [&](double w) { return shift * std::exp(-theta * w); }, p, u, inner_tol);
        // v > u, w = v - u ∈ (0, t-u]: e^{-θ(t-u-w)} w^{p-1}
        const double span = t - u;
        const quad::Result right = quad::integrate_power_singular(
            [&](double w) { return std::exp(-theta * (span - w)); }, p, span, inner_tol);
        return left.value + right.value;
    };
    auto outer = [&](double u) { return std::exp(-theta * (s - u)) * inner(u); };

    // The outer weight concentrates within a few 1/θ of u = s.
    std::vector<double> cuts{0.0};
    for (double lag : {20.0, 5.0, 1.0}) {
        const double c = s - lag / theta;
        if (c > cuts.back()) cuts.push_back(c);
    }
    cuts.push_back(s);

    double total = 0.0;
    bool converged = true;
    const double piece_tol = outer_tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const quad::Result r = quad::integrate(outer, cuts[i], cuts[i + 1], piece_tol);
        total += r.value;
        converged = converged && r.converged;
    }
    if (!converged) {
        throw Error("fou_covariance: quadrature did not reach tolerance " + std::to_string(tol));
    }
    return prefactor * total;
}

double integrated_square(const SamplePath& path) {
    if (path.label != PathLabel::Fou) throw DomainError("integrated_square expects an fOU path");
    const std::vector<double>& x = path.values;
    if (x.size() != path.grid.size()) throw DomainError("path length does not match its grid");
    const double ends = 0.5 * (x.front() * x.front() + x.back() * x.back());
    return path.grid.delta() * (kernels::sum_squares(x) - ends);
}

} // namespace fou
