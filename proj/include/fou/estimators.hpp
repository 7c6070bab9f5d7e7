#pragma once

// Drift estimators computed from a simulated fOU path.

#include "fou/fbm.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace fou {

enum class EstimatorKind { ThetaTilde, ThetaHatOracle, ThetaHatPrime, ThetaHatIto };

std::string_view to_string(EstimatorKind kind) noexcept;

/// Inverse of to_string; also accepts the CLI spellings tilde, hat-oracle,
/// hat-prime and hat-ito.
std::optional<EstimatorKind> parse_estimator(std::string_view name) noexcept;

struct EstimationResult {
    EstimatorKind estimator;
    double estimate;
    double t_max;
    double h;
    std::uint64_t inputs_digest; // FNV-1a over grid, H, path values and scalar inputs
};

/// ∫X²dt below this is treated as zero.
inline constexpr double kDegenerateIntegral = 1e-300;

/// θ̃_T = ((1/(σ² H Γ(2H) T)) ∫_0^T X_t² dt)^{-1/(2H)}, H > 1/2.
EstimationResult theta_tilde(const SamplePath& path, double sigma, HurstParameter h);

/// α_H ∫_0^T ∫_0^t ξ^{2H-2} e^{-θξ} dξ dt = α_H ∫_0^T (T-ξ) ξ^{2H-2} e^{-θξ} dξ,
/// with the ξ^{2H-2} endpoint singularity integrated in closed form.
double correction_integral(double theta, HurstParameter h, double t_max, double tol = 1e-8);

/// Least-squares estimator in its pathwise form
///   θ̂_T = -X_T²/(2∫X²) + σ² correction_integral(θ, H, T)/∫X².
/// The correction depends on the true θ, so this is only usable when θ is
/// known (simulation studies).
EstimationResult theta_hat_oracle(const SamplePath& path, double sigma, HurstParameter h,
                                  double theta_true);

/// Same, with the correction integral precomputed by the caller (it depends on
/// (θ, H, T) only, so experiments compute it once per horizon).
EstimationResult theta_hat_oracle(const SamplePath& path, double sigma, HurstParameter h,
                                  double theta_true, double correction);

/// θ̂'_T = X_T² / (2∫X²dt). Tends to 0, not θ.
EstimationResult theta_hat_prime(const SamplePath& path);

/// -Σ X_{t_k}(X_{t_{k+1}} - X_{t_k}) / ∫X²dt. Forward sums converge to the Itô
/// integral only for Brownian noise, so the path must have H = 1/2.
EstimationResult theta_hat_ito(const SamplePath& path);

/// F_T = -(θ̂ - θ)·∫X²dt / √T.
double f_statistic(const SamplePath& path, double theta_hat, double theta_true);

} // namespace fou
