#pragma once

// Fractional Brownian motion: covariance structure, exact samplers on uniform
// grids, and the H-inner product of step functions.

#include "fou/fft.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fou {

/// Hurst index, always in (0, 1). Operations with a narrower domain check it
/// themselves.
class HurstParameter {
public:
    explicit HurstParameter(double h);
    double value() const noexcept { return h_; }
    bool operator==(const HurstParameter&) const = default;

private:
    double h_;
};

/// Uniform grid t_k = k·t_max/n_steps, k = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double t_max, std::size_t n_steps);

    /// Grid with step `delta` covering [0, t_max]; t_max/delta must be an
    /// integer up to 1e-9 relative.
    static TimeGrid with_step(double t_max, double delta);

    double t_max() const noexcept { return t_max_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t size() const noexcept { return n_steps_ + 1; }
    double delta() const noexcept { return t_max_ / static_cast<double>(n_steps_); }
    double point(std::size_t k) const noexcept {
        return k == n_steps_ ? t_max_ : static_cast<double>(k) * delta();
    }

    bool operator==(const TimeGrid&) const = default;

private:
    double t_max_;
    std::size_t n_steps_;
};

enum class PathLabel { Fbm, Fou };

std::string_view to_string(PathLabel label) noexcept;

/// Values of B^H or X on a grid. `hurst` records the H of the driving noise.
struct SamplePath {
    TimeGrid grid;
    std::vector<double> values; // size grid.size(), values[0] == 0
    PathLabel label;
    HurstParameter hurst;
};

/// R_H(s, t) = ½(|t|^{2H} + |s|^{2H} - |t - s|^{2H}).
double fbm_covariance(double s, double t, HurstParameter h) noexcept;

/// Autocovariance at lag k of the increments B_{(j+1)Δ} - B_{jΔ}:
/// (Δ^{2H}/2)(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
double fgn_autocovariance(std::size_t lag, double delta, HurstParameter h);

enum class FbmMethod { CirculantEmbedding, Cholesky };

std::string_view to_string(FbmMethod method) noexcept;

/// Davies–Harte sampler for n increments of step Δ. The embedding circulant
/// has size m = smallest power of two >= 2n; its eigenvalues are computed once
/// and the object is read-only afterwards. Each draw takes m standard normals
/// and one length-m FFT.
class CirculantEmbedding {
public:
    /// Eigenvalues below -1e-9·max raise CirculantEmbeddingFailed; those in
    /// [-1e-9·max, 0) are clipped to zero.
    CirculantEmbedding(std::size_t n_increments, double delta, HurstParameter h);

    std::size_t n_increments() const noexcept { return n_; }
    std::size_t circulant_size() const noexcept { return fft_.size(); }
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

    /// Stationary Gaussian increments with autocovariance fgn_autocovariance.
    std::vector<double> sample_increments(std::uint64_t seed) const;

private:
    std::size_t n_;
    Radix2Fft fft_;
    std::vector<double> eigenvalues_;
    std::vector<double> scale_; // sqrt(λ_k / m) or sqrt(λ_k / 2m), see sampling
};

/// Lower Cholesky factor of the n×n fGN covariance (Toeplitz). O(n³) to build,
/// O(n²) per draw.
class CholeskyFgn {
public:
    /// Raises CholeskyFailed if a pivot falls below -1e-10·(largest pivot).
    CholeskyFgn(std::size_t n_increments, double delta, HurstParameter h);

    std::size_t n_increments() const noexcept { return n_; }
    std::vector<double> sample_increments(std::uint64_t seed) const;

private:
    std::size_t n_;
    std::vector<double> lower_; // row-major, lower triangle used
};

/// Lower Cholesky factor of a symmetric PSD matrix (row-major n×n). Pivots in
/// [-tol·max pivot, 0] are treated as zero; lower ones raise CholeskyFailed.
std::vector<double> cholesky_psd(std::span<const double> matrix, std::size_t n,
                                 double relative_tol = 1e-10);

/// Reusable fBm generator for a fixed (grid, H, method).
class FbmGenerator {
public:
    FbmGenerator(TimeGrid grid, HurstParameter h,
                 FbmMethod method = FbmMethod::CirculantEmbedding);

    const TimeGrid& grid() const noexcept { return grid_; }
    HurstParameter hurst() const noexcept { return h_; }
    FbmMethod method() const noexcept { return method_; }

    SamplePath generate(std::uint64_t seed) const;

private:
    TimeGrid grid_;
    HurstParameter h_;
    FbmMethod method_;
    std::optional<CirculantEmbedding> circulant_;
    std::optional<CholeskyFgn> cholesky_;
};

/// One-shot path generation; identical inputs give bit-identical output.
SamplePath generate_fbm(const TimeGrid& grid, HurstParameter h, std::uint64_t seed,
                        FbmMethod method = FbmMethod::CirculantEmbedding);

/// Piecewise-constant function: value[i] on [breaks[i], breaks[i+1]).
struct StepFunction {
    std::vector<double> breaks; // strictly increasing, size values.size() + 1
    std::vector<double> values;

    /// 1 on [a, b], 0 elsewhere (a < b).
    static StepFunction indicator(double a, double b);
};

/// ⟨φ, ψ⟩_H = α_H ∫∫ φ_s ψ_t |t - s|^{2H-2} ds dt, α_H = H(2H - 1), for
/// 1/2 < H < 1. Each pair of constant pieces contributes the exact cell
/// integral ½(|d-a|^{2H} + |c-b|^{2H} - |d-b|^{2H} - |c-a|^{2H}) for cells
/// [a,b]×[c,d], so the result carries no quadrature error; `tol` is accepted
/// for interface symmetry with the quadrature-based routines.
double inner_product_h(const StepFunction& phi, const StepFunction& psi, HurstParameter h,
                       double tol = 1e-10);

} // namespace fou
