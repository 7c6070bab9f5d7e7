#pragma once

// Closed-form asymptotic constants of the drift estimators, and independent
// numerical routes to the ones that are defined by integrals.
//
// Domains: σ_H², δ_H accept 1/2 <= H < 3/4; γ_H, d_H, f_H need 1/2 < H < 3/4.
// Every function rejects H outside its domain with DomainError.

#include "fou/fou.hpp"

#include <cstdint>
#include <optional>

namespace fou {

/// α_H = H(2H - 1).
double alpha_h(double h) noexcept;

/// σ_H² = (4H-1)(1 + Γ(3-4H)Γ(4H-1) / (Γ(2-2H)Γ(2H))).
double sigma_h_squared(double h);

/// δ_H = H²(4H-1)(Γ(2H)² + Γ(2H)Γ(3-4H)Γ(4H-1)/Γ(2-2H)); lim E(F_T²) = θ^{1-4H}σ⁴δ_H.
double delta_h(double h);

/// γ_H = (8H-2)Γ(2H-1)² + (16H-4)Γ(2H-1)Γ(3-4H)Γ(4H-2)/Γ(2-2H); lim I_T/T = θ^{1-4H}γ_H.
double gamma_h(double h);

/// f_H = (4H-1)Γ(2H-1)Γ(3-4H)Γ(4H-2)/Γ(2-2H).
double f_h(double h);

/// d_H = f_H + (2H - 1/2)Γ(2H-1)².
double d_h_closed(double h);

struct MonteCarloEstimate {
    double estimate;
    double std_error;
};

/// Importance-sampled estimate of
///   d_H = ∫_{[0,∞)³} e^{-x-|y-z|} z^{2H-2} |x-y|^{2H-2} dx dy dz.
/// Proposal: z from a two-piece density (∝ z^{2H-2} on [0,1], Pareto tail of
/// index 3-4H beyond), y = z + Laplace(1), x from an equal mixture of Exp(1)
/// and y ± Gamma(2H-1, 1). Each singular or slowly decaying factor of the
/// integrand is matched by the proposal, which keeps the weight variance
/// finite for 1/2 < H < 3/4. Samples are split into 64 sub-streams with
/// derived seeds, run on `workers` threads (0 = hardware concurrency) and
/// merged in stream order, so the result does not depend on the worker count.
MonteCarloEstimate d_h_numeric(double h, std::uint64_t n_samples, std::uint64_t seed,
                               unsigned workers = 0);

/// (2H-1) ∫_0^∞∫_0^∞ e^{-(s+u)} |u-s|^{2H-2} du ds evaluated numerically: the
/// u-integral is done analytically, leaving (2H-1)∫_0^∞ x^{2H-2} e^{-x} dx,
/// which is integrated by quadrature with the x^{2H-2} endpoint behaviour
/// taken in closed form. Equals Γ(2H).
double lemma_a1_value(double h, double tol = 1e-10);

/// E(F_T²) for H = 1/2: (σ⁴/T)(T/(2θ) + (e^{-2θT} - 1)/(4θ²)).
double finite_t_variance_bm(double theta, double sigma, double t_max);

struct CltVariances {
    double var_hat;                  // θσ_H²
    std::optional<double> var_tilde; // θσ_H²/(2H)², only for H > 1/2
};

CltVariances clt_variances(const FouParams& params);

/// Every constant for one (H, θ, σ). Entries outside their domain are empty.
struct ConstantsTable {
    double h;
    double theta;
    double sigma;
    std::optional<double> alpha_h;
    std::optional<double> sigma_h_sq;
    std::optional<double> delta_h;
    std::optional<double> gamma_h;
    std::optional<double> d_h;
    std::optional<double> f_h;
    std::optional<double> ergodic_limit;     // σ²θ^{-2H}HΓ(2H)
    std::optional<double> correction_limit;  // θ^{1-2H}Γ(2H-1)
    std::optional<double> clt_variance_hat;  // θσ_H²
    std::optional<double> clt_variance_tilde;// θσ_H²/(2H)²
    std::optional<double> f_variance_limit;  // θ^{1-4H}σ⁴δ_H
};

ConstantsTable constants_table(double h, double theta = 1.0, double sigma = 1.0);

} // namespace fou
