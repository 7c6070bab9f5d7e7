#include "fou/fbm.hpp"

#include "fou/error.hpp"
#include "fou/seed.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace fou {

HurstParameter::HurstParameter(double h) : h_(h) {
    if (!(h > 0.0 && h < 1.0)) {
        throw DomainError("Hurst parameter must lie in (0, 1), got " + std::to_string(h));
    }
}

TimeGrid::TimeGrid(double t_max, std::size_t n_steps) : t_max_(t_max), n_steps_(n_steps) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw DomainError("time horizon must be positive and finite");
    }
    if (n_steps < 1) throw DomainError("a grid needs at least one step");
}

TimeGrid TimeGrid::with_step(double t_max, double delta) {
    if (!(delta > 0.0)) throw DomainError("grid step must be positive");
    const double ratio = t_max / delta;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * ratio) {
        throw DomainError("t_max = " + std::to_string(t_max) +
                          " is not an integer multiple of delta = " + std::to_string(delta));
    }
    return TimeGrid(t_max, static_cast<std::size_t>(steps));
}

std::string_view to_string(PathLabel label) noexcept {
    return label == PathLabel::Fbm ? "fbm" : "fou";
}

std::string_view to_string(FbmMethod method) noexcept {
    return method == FbmMethod::CirculantEmbedding ? "circulant" : "cholesky";
}

double fbm_covariance(double s, double t, HurstParameter h) noexcept {
    const double two_h = 2.0 * h.value();
    return 0.5 * (std::pow(std::abs(t), two_h) + std::pow(std::abs(s), two_h) -
                  std::pow(std::abs(t - s), two_h));
}

double fgn_autocovariance(std::size_t lag, double delta, HurstParameter h) {
    if (!(delta > 0.0)) throw DomainError("fgn_autocovariance: delta must be positive");
    const double two_h = 2.0 * h.value();
    const double k = static_cast<double>(lag);
    const double second_difference =
        std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(std::abs(k - 1.0), two_h);
    return 0.5 * std::pow(delta, two_h) * second_difference;
}

// ---------------------------------------------------------------------------
// Circulant embedding

CirculantEmbedding::CirculantEmbedding(std::size_t n_increments, double delta, HurstParameter h)
    : n_(n_increments), fft_(next_power_of_two(2 * std::max<std::size_t>(n_increments, 1))) {
    if (n_increments < 1) throw DomainError("circulant embedding needs at least one increment");
    const std::size_t m = fft_.size();
    const std::size_t half = m / 2;

    // First row of the circulant: γ(0..m/2) then mirrored.
    std::vector<double> re(m), im(m, 0.0);
    for (std::size_t j = 0; j <= half; ++j) re[j] = fgn_autocovariance(j, delta, h);
    for (std::size_t j = half + 1; j < m; ++j) re[j] = re[m - j];
    fft_.forward(re, im);

    eigenvalues_ = std::move(re);
    const double largest = *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
    const double floor = -1e-9 * largest;
    for (std::size_t k = 0; k < m; ++k) {
        double& lambda = eigenvalues_[k];
        if (lambda < floor) {
            throw CirculantEmbeddingFailed(
                "circulant eigenvalue " + std::to_string(k) + " = " + std::to_string(lambda) +
                " is below -1e-9 * max eigenvalue; fall back to the Cholesky sampler");
        }
        if (lambda < 0.0) lambda = 0.0;
    }

    const double md = static_cast<double>(m);
    scale_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const bool real_mode = (k == 0 || k == half);
        scale_[k] = std::sqrt(eigenvalues_[k] / (real_mode ? md : 2.0 * md));
    }
}

std::vector<double> CirculantEmbedding::sample_increments(std::uint64_t seed) const {
    const std::size_t m = fft_.size();
    const std::size_t half = m / 2;
    Engine engine(seed);
    boost::random::normal_distribution<double> normal;

    // Hermitian spectrum w_{m-k} = conj(w_k) so the transform is real. Draw
    // order: w_0, w_{m/2}, then (Re, Im) of w_1 .. w_{m/2-1}.
    std::vector<double> re(m), im(m, 0.0);
    re[0] = scale_[0] * normal(engine);
    if (half > 0 && m > 1) re[half] = scale_[half] * normal(engine);
    for (std::size_t k = 1; k < half; ++k) {
        const double a = scale_[k] * normal(engine);
        const double b = scale_[k] * normal(engine);
        re[k] = a;
        im[k] = b;
        re[m - k] = a;
        im[m - k] = -b;
    }
    fft_.forward(re, im);
    re.resize(n_);
    return re;
}

// ---------------------------------------------------------------------------
// Cholesky

std::vector<double> cholesky_psd(std::span<const double> matrix, std::size_t n,
                                 double relative_tol) {
    if (matrix.size() != n * n) throw DomainError("cholesky_psd: matrix is not n x n");
    std::vector<double> lower(n * n, 0.0);
    double largest_pivot = 0.0;
    for (std::size_t i = 0; i < n; ++i) largest_pivot = std::max(largest_pivot, matrix[i * n + i]);
    const double floor = -relative_tol * largest_pivot;

    for (std::size_t j = 0; j < n; ++j) {
        double pivot = matrix[j * n + j];
        for (std::size_t k = 0; k < j; ++k) pivot -= lower[j * n + k] * lower[j * n + k];
        if (pivot < floor) {
            throw CholeskyFailed("covariance matrix is not positive semidefinite (pivot " +
                                 std::to_string(j) + " = " + std::to_string(pivot) + ")");
        }
        const double diag = pivot > relative_tol * largest_pivot ? std::sqrt(pivot) : 0.0;
        lower[j * n + j] = diag;
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = matrix[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= lower[i * n + k] * lower[j * n + k];
            lower[i * n + j] = diag > 0.0 ? v / diag : 0.0;
        }
    }
    return lower;
}

CholeskyFgn::CholeskyFgn(std::size_t n_increments, double delta, HurstParameter h)
    : n_(n_increments) {
    if (n_increments < 1) throw DomainError("Cholesky sampler needs at least one increment");
    std::vector<double> autocov(n_);
    for (std::size_t k = 0; k < n_; ++k) autocov[k] = fgn_autocovariance(k, delta, h);
    std::vector<double> cov(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) cov[i * n_ + j] = autocov[i > j ? i - j : j - i];
    }
    lower_ = cholesky_psd(cov, n_);
}

std::vector<double> CholeskyFgn::sample_increments(std::uint64_t seed) const {
    Engine engine(seed);
    boost::random::normal_distribution<double> normal;
    std::vector<double> z(n_);
    for (double& v : z) v = normal(engine);
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= i; ++k) acc += lower_[i * n_ + k] * z[k];
        out[i] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------

FbmGenerator::FbmGenerator(TimeGrid grid, HurstParameter h, FbmMethod method)
    : grid_(grid), h_(h), method_(method) {
    if (method == FbmMethod::CirculantEmbedding) {
        circulant_.emplace(grid.n_steps(), grid.delta(), h);
    } else {
        cholesky_.emplace(grid.n_steps(), grid.delta(), h);
    }
}

SamplePath FbmGenerator::generate(std::uint64_t seed) const {
    const std::vector<double> increments = circulant_ ? circulant_->sample_increments(seed)
                                                      : cholesky_->sample_increments(seed);
    std::vector<double> values(grid_.size());
    values[0] = 0.0;
    for (std::size_t k = 0; k < increments.size(); ++k) values[k + 1] = values[k] + increments[k];
    return SamplePath{grid_, std::move(values), PathLabel::Fbm, h_};
}

SamplePath generate_fbm(const TimeGrid& grid, HurstParameter h, std::uint64_t seed,
                        FbmMethod method) {
    return FbmGenerator(grid, h, method).generate(seed);
}

// ---------------------------------------------------------------------------
// Inner product

StepFunction StepFunction::indicator(double a, double b) {
    if (!(a < b)) throw DomainError("indicator interval must satisfy a < b");
    return StepFunction{{a, b}, {1.0}};
}

namespace {

void check_step_function(const StepFunction& f, const char* name) {
    if (f.breaks.size() != f.values.size() + 1) {
        throw DomainError(std::string(name) + ": breaks must have one more entry than values");
    }
    for (std::size_t i = 1; i < f.breaks.size(); ++i) {
        if (!(f.breaks[i] > f.breaks[i - 1])) {
            throw DomainError(std::string(name) + ": breaks must be strictly increasing");
        }
    }
}

} // namespace

double inner_product_h(const StepFunction& phi, const StepFunction& psi, HurstParameter h,
                       double /*tol*/) {
    if (!(h.value() > 0.5)) {
        throw DomainError("inner_product_h requires H > 1/2 (kernel |t-s|^{2H-2})");
    }
    check_step_function(phi, "phi");
    check_step_function(psi, "psi");
    const double two_h = 2.0 * h.value();
    auto pw = [two_h](double x) { return std::pow(std::abs(x), two_h); };

    double total = 0.0;
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        if (phi.values[i] == 0.0) continue;
        const double a = phi.breaks[i];
        const double b = phi.breaks[i + 1];
        for (std::size_t j = 0; j < psi.values.size(); ++j) {
            if (psi.values[j] == 0.0) continue;
            const double c = psi.breaks[j];
            const double d = psi.breaks[j + 1];
            const double cell = 0.5 * (pw(d - a) + pw(c - b) - pw(d - b) - pw(c - a));
            total += phi.values[i] * psi.values[j] * cell;
        }
    }
    return total;
}

} // namespace fou
