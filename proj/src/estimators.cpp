#include "fou/estimators.hpp"

#include "fou/error.hpp"
#include "fou/fou.hpp"
#include "fou/kernels/kernels.hpp"
#include "fou/quadrature.hpp"
#include "fou/special.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace fou {

namespace {

class Fnv1a {
public:
    void add(std::uint64_t word) noexcept {
        for (int i = 0; i < 8; ++i) {
            hash_ ^= (word >> (8 * i)) & 0xFF;
            hash_ *= 0x100000001B3ULL;
        }
    }
    void add(double v) noexcept { add(std::bit_cast<std::uint64_t>(v)); }
    std::uint64_t value() const noexcept { return hash_; }

private:
    std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

std::uint64_t digest(const SamplePath& path, std::initializer_list<double> scalars) {
    Fnv1a h;
    h.add(path.grid.t_max());
    h.add(static_cast<std::uint64_t>(path.grid.n_steps()));
    h.add(path.hurst.value());
    for (double v : path.values) h.add(v);
    for (double v : scalars) h.add(v);
    return h.value();
}

double checked_integral(const SamplePath& path) {
    const double is = integrated_square(path);
    if (!(is >= kDegenerateIntegral)) {
        throw DegeneratePath("integral of X^2 is zero; the estimator is undefined");
    }
    return is;
}

void require_above_half(HurstParameter h, const char* who) {
    if (!(h.value() > 0.5)) throw DomainError(std::string(who) + " requires H > 1/2");
}

} // namespace

std::string_view to_string(EstimatorKind kind) noexcept {
    switch (kind) {
    case EstimatorKind::ThetaTilde: return "tilde";
    case EstimatorKind::ThetaHatOracle: return "hat-oracle";
    case EstimatorKind::ThetaHatPrime: return "hat-prime";
    case EstimatorKind::ThetaHatIto: return "hat-ito";
    }
    return "unknown";
}

std::optional<EstimatorKind> parse_estimator(std::string_view name) noexcept {
    if (name == "tilde" || name == "ThetaTilde") return EstimatorKind::ThetaTilde;
    if (name == "hat-oracle" || name == "ThetaHatOracle") return EstimatorKind::ThetaHatOracle;
    if (name == "hat-prime" || name == "ThetaHatPrime") return EstimatorKind::ThetaHatPrime;
    if (name == "hat-ito" || name == "ThetaHatIto") return EstimatorKind::ThetaHatIto;
    return std::nullopt;
}

EstimationResult theta_tilde(const SamplePath& path, double sigma, HurstParameter h) {
    require_above_half(h, "theta_tilde");
    if (!(sigma > 0.0)) throw DomainError("theta_tilde requires sigma > 0");
    const double is = checked_integral(path);
    const double hv = h.value();
    const double t = path.grid.t_max();
    const double normalised = is / (sigma * sigma * hv * gamma_fn(2.0 * hv) * t);
    return {EstimatorKind::ThetaTilde, std::pow(normalised, -1.0 / (2.0 * hv)), t, hv,
            digest(path, {sigma})};
}

double correction_integral(double theta, HurstParameter h, double t_max, double tol) {
    if (!(theta > 0.0)) throw DomainError("correction_integral requires theta > 0");
    require_above_half(h, "correction_integral");
    if (!(t_max > 0.0)) return 0.0;
    const double hv = h.value();
    const double p = 2.0 * hv - 1.0;
    const double alpha = hv * p;
    const double target = tol / alpha;

    auto weight = [theta, t_max](double xi) { return (t_max - xi) * std::exp(-theta * xi); };
    const double split = std::min(t_max, 1.0 / theta);
    const quad::Result near = quad::integrate_power_singular(weight, p, split, 0.5 * target);
    // Over a long range the rule would see only the decayed tail of e^{-θξ}
    // and stop early, so the range is cut at a few multiples of 1/θ first.
    double far = 0.0;
    bool converged = near.converged;
    double lo = split;
    for (double k : {4.0, 16.0, 64.0, 0.0}) {
        const double hi = k == 0.0 ? t_max : std::min(t_max, k / theta);
        if (hi <= lo) continue;
        const quad::Result piece = quad::integrate(
            [&](double xi) { return std::pow(xi, p - 1.0) * weight(xi); }, lo, hi, 0.125 * target);
        far += piece.value;
        converged = converged && piece.converged;
        lo = hi;
    }
    if (!converged) throw Error("correction_integral: quadrature did not reach tolerance");
    return alpha * (near.value + far);
}

EstimationResult theta_hat_oracle(const SamplePath& path, double sigma, HurstParameter h,
                                  double theta_true) {
    return theta_hat_oracle(path, sigma, h, theta_true,
                            correction_integral(theta_true, h, path.grid.t_max()));
}

EstimationResult theta_hat_oracle(const SamplePath& path, double sigma, HurstParameter h,
                                  double theta_true, double correction) {
    require_above_half(h, "theta_hat_oracle");
    const double is = checked_integral(path);
    const double x_end = path.values.back();
    const double estimate = -x_end * x_end / (2.0 * is) + sigma * sigma * correction / is;
    return {EstimatorKind::ThetaHatOracle, estimate, path.grid.t_max(), h.value(),
            digest(path, {sigma, theta_true, correction})};
}

EstimationResult theta_hat_prime(const SamplePath& path) {
    const double is = checked_integral(path);
    const double x_end = path.values.back();
    return {EstimatorKind::ThetaHatPrime, x_end * x_end / (2.0 * is), path.grid.t_max(),
            path.hurst.value(), digest(path, {})};
}

EstimationResult theta_hat_ito(const SamplePath& path) {
    if (path.hurst.value() != 0.5) {
        throw DomainError("theta_hat_ito: forward Riemann sums approximate the Ito integral "
                          "only for H = 1/2");
    }
    const double is = checked_integral(path);
    const double numerator = kernels::forward_cross_sum(path.values);
    return {EstimatorKind::ThetaHatIto, -numerator / is, path.grid.t_max(), 0.5,
            digest(path, {})};
}

double f_statistic(const SamplePath& path, double theta_hat, double theta_true) {
    const double is = checked_integral(path);
    return -(theta_hat - theta_true) * is / std::sqrt(path.grid.t_max());
}

} // namespace fou
