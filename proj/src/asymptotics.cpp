#include "fou/asymptotics.hpp"

#include "fou/error.hpp"
#include "fou/parallel.hpp"
#include "fou/quadrature.hpp"
#include "fou/seed.hpp"
#include "fou/special.hpp"

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace fou {

namespace {

void require_clt_domain(double h, const char* who) {
    if (!(h >= 0.5 && h < 0.75)) {
        throw DomainError(std::string(who) + " is defined for 1/2 <= H < 3/4, got H = " +
                          std::to_string(h));
    }
}

void require_open_domain(double h, const char* who) {
    if (!(h > 0.5 && h < 0.75)) {
        throw DomainError(std::string(who) + " is defined for 1/2 < H < 3/4, got H = " +
                          std::to_string(h));
    }
}

// Γ(2H-1)Γ(3-4H)Γ(4H-2)/Γ(2-2H), shared by γ_H and f_H.
double triple_gamma_ratio(double h) {
    return gamma_fn(2.0 * h - 1.0) * gamma_fn(3.0 - 4.0 * h) * gamma_fn(4.0 * h - 2.0) /
           gamma_fn(2.0 - 2.0 * h);
}

} // namespace

double alpha_h(double h) noexcept { return h * (2.0 * h - 1.0); }

double sigma_h_squared(double h) {
    require_clt_domain(h, "sigma_h_squared");
    const double ratio = gamma_fn(3.0 - 4.0 * h) * gamma_fn(4.0 * h - 1.0) /
                         (gamma_fn(2.0 - 2.0 * h) * gamma_fn(2.0 * h));
    return (4.0 * h - 1.0) * (1.0 + ratio);
}

double delta_h(double h) {
    require_clt_domain(h, "delta_h");
    const double g2h = gamma_fn(2.0 * h);
    return h * h * (4.0 * h - 1.0) *
           (g2h * g2h +
            g2h * gamma_fn(3.0 - 4.0 * h) * gamma_fn(4.0 * h - 1.0) / gamma_fn(2.0 - 2.0 * h));
}

double gamma_h(double h) {
    require_open_domain(h, "gamma_h");
    const double g = gamma_fn(2.0 * h - 1.0);
    return (8.0 * h - 2.0) * g * g + (16.0 * h - 4.0) * triple_gamma_ratio(h);
}

double f_h(double h) {
    require_open_domain(h, "f_h");
    return (4.0 * h - 1.0) * triple_gamma_ratio(h);
}

double d_h_closed(double h) {
    require_open_domain(h, "d_h_closed");
    const double g = gamma_fn(2.0 * h - 1.0);
    return f_h(h) + (2.0 * h - 0.5) * g * g;
}

MonteCarloEstimate d_h_numeric(double h, std::uint64_t n_samples, std::uint64_t seed,
                               unsigned workers) {
    require_open_domain(h, "d_h_numeric");
    if (n_samples < 2) throw DomainError("d_h_numeric needs at least two samples");

    constexpr std::size_t kStreams = 64;
    const double a = 2.0 * h - 1.0;  // z^{a-1}, |x-y|^{a-1}
    const double tail = 3.0 - 4.0 * h; // Pareto index of the z proposal
    const double gamma_a = gamma_fn(a);

    struct Moments {
        std::uint64_t n = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::vector<Moments> partial(kStreams);

    parallel_for(kStreams, workers, [&](std::size_t stream) {
        const std::uint64_t count =
            n_samples / kStreams + (stream < n_samples % kStreams ? 1 : 0);
        Engine engine(derive_seed(seed, stream));
        boost::random::uniform_01<double> uniform;
        boost::random::exponential_distribution<double> exponential(1.0);
        boost::random::gamma_distribution<double> gamma_variate(a, 1.0);

        Moments m;
        for (std::uint64_t i = 0; i < count; ++i) {
            // z and the ratio z^{a-1}/q_z(z), which is free of the singularity.
            double z, z_ratio;
            if (uniform(engine) < 0.5) {
                z = std::pow(uniform(engine), 1.0 / a);
                z_ratio = 2.0 / a;
            } else {
                z = std::pow(1.0 - uniform(engine), -1.0 / tail);
                z_ratio = 2.0 * std::pow(z, a + tail) / tail;
            }
            // y = z + Laplace(1); its density cancels e^{-|y-z|} up to the factor 2.
            const double laplace = uniform(engine) < 0.5 ? exponential(engine) : -exponential(engine);
            const double y = z + laplace;
            // x from ½Exp(1) + ½(y ± Gamma(a, 1)).
            double x;
            if (uniform(engine) < 0.5) {
                x = exponential(engine);
            } else {
                const double v = gamma_variate(engine);
                x = uniform(engine) < 0.5 ? y + v : y - v;
            }
            double w = 0.0;
            if (y >= 0.0 && x >= 0.0) {
                const double d = std::abs(x - y);
                // e^{-x}|x-y|^{a-1} / q(x|y), rearranged to stay finite at d = 0.
                const double x_ratio =
                    1.0 / (0.5 * std::exp(-x) * std::pow(d, 1.0 - a) +
                           0.25 * std::exp(-d) / gamma_a);
                w = 2.0 * std::exp(-x) * z_ratio * x_ratio;
            }
            ++m.n;
            const double delta = w - m.mean;
            m.mean += delta / static_cast<double>(m.n);
            m.m2 += delta * (w - m.mean);
        }
        partial[stream] = m;
    });

    Moments total;
    for (const Moments& m : partial) {
        if (m.n == 0) continue;
        const double n_a = static_cast<double>(total.n);
        const double n_b = static_cast<double>(m.n);
        const double delta = m.mean - total.mean;
        const double n_ab = n_a + n_b;
        total.mean += delta * n_b / n_ab;
        total.m2 += m.m2 + delta * delta * n_a * n_b / n_ab;
        total.n += m.n;
    }
    const double n = static_cast<double>(total.n);
    const double variance = total.m2 / (n - 1.0);
    return {total.mean, std::sqrt(variance / n)};
}

double lemma_a1_value(double h, double tol) {
    if (!(h > 0.5 && h < 1.0)) {
        throw DomainError("lemma_a1_value is defined for 1/2 < H < 1, got H = " +
                          std::to_string(h));
    }
    const double p = 2.0 * h - 1.0;
    const quad::Result head = quad::integrate_power_singular(
        [](double x) { return std::exp(-x); }, p, 1.0, 0.25 * tol);
    const quad::Result tail = quad::integrate_to_infinity(
        [p](double x) { return std::pow(x, p - 1.0) * std::exp(-x); }, 1.0, 0.25 * tol);
    if (!head.converged || !tail.converged) {
        throw Error("lemma_a1_value: quadrature did not reach tolerance");
    }
    return p * (head.value + tail.value);
}

double finite_t_variance_bm(double theta, double sigma, double t_max) {
    if (!(theta > 0.0) || !(t_max > 0.0)) {
        throw DomainError("finite_t_variance_bm requires theta > 0 and T > 0");
    }
    const double s4 = sigma * sigma * sigma * sigma;
    return s4 / t_max *
           (t_max / (2.0 * theta) + std::expm1(-2.0 * theta * t_max) / (4.0 * theta * theta));
}

CltVariances clt_variances(const FouParams& params) {
    const double h = params.h.value();
    require_clt_domain(h, "clt_variances");
    const double var_hat = params.theta * sigma_h_squared(h);
    CltVariances out{var_hat, std::nullopt};
    if (h > 0.5) out.var_tilde = var_hat / (4.0 * h * h);
    return out;
}

ConstantsTable constants_table(double h, double theta, double sigma) {
    const FouParams params(theta, sigma, HurstParameter(h));
    ConstantsTable t{};
    t.h = h;
    t.theta = theta;
    t.sigma = sigma;
    t.alpha_h = alpha_h(h);
    const bool clt = h >= 0.5 && h < 0.75;
    const bool open = h > 0.5 && h < 0.75;
    if (clt) {
        t.sigma_h_sq = sigma_h_squared(h);
        t.delta_h = delta_h(h);
        const CltVariances v = clt_variances(params);
        t.clt_variance_hat = v.var_hat;
        t.clt_variance_tilde = v.var_tilde;
        t.f_variance_limit = std::pow(theta, 1.0 - 4.0 * h) * std::pow(sigma, 4) * *t.delta_h;
    }
    if (open) {
        t.gamma_h = gamma_h(h);
        t.d_h = d_h_closed(h);
        t.f_h = f_h(h);
    }
    if (h >= 0.5) t.ergodic_limit = stationary_second_moment(params);
    if (h > 0.5) t.correction_limit = std::pow(theta, 1.0 - 2.0 * h) * gamma_fn(2.0 * h - 1.0);
    return t;
}

} // namespace fou
