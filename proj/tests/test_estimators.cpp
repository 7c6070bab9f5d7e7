#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fou/asymptotics.hpp"
#include "fou/error.hpp"
#include "fou/estimators.hpp"
#include "fou/fou.hpp"
#include "fou/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <vector>

using namespace fou;

namespace {

SamplePath fou_path(const TimeGrid& grid, std::vector<double> values, double h) {
    return {grid, std::move(values), PathLabel::Fou, HurstParameter(h)};
}

SamplePath constant_path(double t_max, std::size_t n, double c, double h) {
    return fou_path(TimeGrid(t_max, n), std::vector<double>(n + 1, c), h);
}

SamplePath scaled(SamplePath p, double c) {
    for (double& v : p.values) v *= c;
    return p;
}

// α_H ∫_0^T (T-ξ) ξ^{p-1} e^{-θξ} dξ = α_H (T γ(p, θT)/θ^p - γ(p+1, θT)/θ^{p+1}), p = 2H-1.
double correction_oracle(double theta, double h, double t) {
    const double p = 2.0 * h - 1.0;
    const double x = theta * t;
    return h * p *
           (t * boost::math::tgamma_lower(p, x) / std::pow(theta, p) -
            boost::math::tgamma_lower(p + 1.0, x) / std::pow(theta, p + 1.0));
}

} // namespace

TEST_CASE("estimator names round-trip") {
    for (EstimatorKind k : {EstimatorKind::ThetaTilde, EstimatorKind::ThetaHatOracle,
                            EstimatorKind::ThetaHatPrime, EstimatorKind::ThetaHatIto}) {
        CHECK(parse_estimator(to_string(k)) == k);
    }
    CHECK_FALSE(parse_estimator("hat").has_value());
}

TEST_CASE("theta tilde inverts the ergodic limit") {
    for (double theta0 : {0.1, 1.0, 10.0}) {
        for (double h : {0.55, 0.6, 0.7}) {
            for (double sigma : {1.0, 2.5}) {
                const double c = std::sqrt(sigma * sigma * h * std::tgamma(2.0 * h) *
                                           std::pow(theta0, -2.0 * h));
                const EstimationResult r = theta_tilde(constant_path(50.0, 500, c, h), sigma,
                                                       HurstParameter(h));
                CHECK(r.estimate == doctest::Approx(theta0).epsilon(1e-12));
                CHECK(r.estimator == EstimatorKind::ThetaTilde);
                CHECK(r.t_max == 50.0);
            }
        }
    }
}

TEST_CASE("argument scaling invariance") {
    const FouParams p(1.0, 1.0, HurstParameter(0.6));
    const SamplePath x = simulate_fou(p, generate_fbm(TimeGrid(50.0, 5000), p.h, 4));
    const double base = theta_tilde(x, 1.0, p.h).estimate;
    for (double c : {0.5, 4.0}) { // powers of two scale without rounding
        CHECK(theta_tilde(scaled(x, c), c, p.h).estimate == base);
    }
    CHECK(theta_tilde(scaled(x, 3.0), 3.0, p.h).estimate == doctest::Approx(base).epsilon(1e-14));

    const FouParams q(1.0, 1.0, HurstParameter(0.5));
    const SamplePath y = simulate_fou(q, generate_fbm(TimeGrid(50.0, 5000), q.h, 4));
    const double ito = theta_hat_ito(y).estimate;
    for (double c : {0.25, 8.0}) CHECK(theta_hat_ito(scaled(y, c)).estimate == ito);
    CHECK(theta_hat_ito(scaled(y, 3.0)).estimate == doctest::Approx(ito).epsilon(1e-14));
}

TEST_CASE("correction integral against incomplete gamma functions") {
    for (double h : {0.55, 0.6, 0.7, 0.74, 0.9}) {
        for (double theta : {0.5, 1.0, 2.0}) {
            for (double t : {0.01, 1.0, 37.0, 800.0, 1e4}) {
                const double ref = correction_oracle(theta, h, t);
                CHECK(std::abs(correction_integral(theta, HurstParameter(h), t) - ref) <
                      1e-8 + 1e-12 * ref);
            }
        }
    }
    CHECK(correction_integral(1.0, HurstParameter(0.6), 1e-8) < 1e-6);
    CHECK_THROWS_AS(correction_integral(1.0, HurstParameter(0.5), 10.0), DomainError);
}

TEST_CASE("normalised correction integral: large-T limit and theta ratio") {
    const double h = 0.6, t = 1e4;
    const double a = alpha_h(h);
    const double one = correction_integral(1.0, HurstParameter(h), t) / (a * t);
    const double two = correction_integral(2.0, HurstParameter(h), t) / (a * t);
    CHECK(one == doctest::Approx(std::tgamma(0.2)).epsilon(1e-2));
    CHECK(two / one == doctest::Approx(std::pow(2.0, 1.0 - 2.0 * h)).epsilon(1e-3));
}

TEST_CASE("oracle estimator: pathwise identity and zero correction") {
    const FouParams p(1.3, 0.8, HurstParameter(0.65));
    const SamplePath x = simulate_fou(p, generate_fbm(TimeGrid(40.0, 4000), p.h, 12));
    const double is = integrated_square(x);
    const double corr = correction_integral(p.theta, p.h, 40.0);
    const double est = theta_hat_oracle(x, p.sigma, p.h, p.theta).estimate;
    const double xt = x.values.back();
    CHECK(est + xt * xt / (2.0 * is) ==
          doctest::Approx(p.sigma * p.sigma * corr / is).epsilon(1e-12));
    CHECK(theta_hat_oracle(x, p.sigma, p.h, p.theta, 0.0).estimate ==
          -theta_hat_prime(x).estimate);
    CHECK(theta_hat_oracle(x, p.sigma, p.h, p.theta, corr).estimate == est);
}

TEST_CASE("oracle estimator is invariant to sigma on a common fBm path") {
    const HurstParameter h(0.6);
    const SamplePath b = generate_fbm(TimeGrid(30.0, 3000), h, 8);
    const double e1 = theta_hat_oracle(simulate_fou(FouParams(1.0, 1.0, h), b), 1.0, h, 1.0).estimate;
    const double e2 = theta_hat_oracle(simulate_fou(FouParams(1.0, 2.0, h), b), 2.0, h, 1.0).estimate;
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-14));
}

TEST_CASE("theta hat prime") {
    std::vector<double> v{0.0, 1.0, -2.0, 0.5, 0.0};
    CHECK(theta_hat_prime(fou_path(TimeGrid(1.0, 4), v, 0.6)).estimate == 0.0);
    v.back() = 2.0;
    const SamplePath x = fou_path(TimeGrid(1.0, 4), v, 0.6);
    CHECK(theta_hat_prime(x).estimate == doctest::Approx(4.0 / (2.0 * integrated_square(x))));
}

TEST_CASE("theta hat ito: deterministic decay and summation by parts") {
    double prev_err = 1.0;
    for (std::size_t n : {100u, 1000u, 10000u}) {
        const TimeGrid g(5.0, n);
        std::vector<double> x(n + 1);
        for (std::size_t k = 0; k <= n; ++k) x[k] = std::exp(-g.point(k));
        const double err = std::abs(theta_hat_ito(fou_path(g, x, 0.5)).estimate - 1.0);
        CHECK(err < prev_err / 5.0);
        prev_err = err;
    }
    CHECK(prev_err < 1e-3);

    const FouParams p(1.0, 1.0, HurstParameter(0.5));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SamplePath x = simulate_fou(p, generate_fbm(TimeGrid(20.0, 2000), p.h, seed));
        double sq = 0.0;
        for (std::size_t k = 0; k + 1 < x.values.size(); ++k) {
            const double d = x.values[k + 1] - x.values[k];
            sq += d * d;
        }
        const double xt = x.values.back();
        CHECK(theta_hat_ito(x).estimate * integrated_square(x) ==
              doctest::Approx(-0.5 * (xt * xt - sq)).epsilon(1e-11));
    }
    CHECK_THROWS_AS(theta_hat_ito(constant_path(1.0, 4, 1.0, 0.6)), DomainError);
}

TEST_CASE("degenerate paths and domain errors") {
    const SamplePath zero = constant_path(2.0, 10, 0.0, 0.6);
    const SamplePath zero_bm = constant_path(2.0, 10, 0.0, 0.5);
    CHECK_THROWS_AS(theta_tilde(zero, 1.0, HurstParameter(0.6)), DegeneratePath);
    CHECK_THROWS_AS(theta_hat_oracle(zero, 1.0, HurstParameter(0.6), 1.0), DegeneratePath);
    CHECK_THROWS_AS(theta_hat_prime(zero), DegeneratePath);
    CHECK_THROWS_AS(theta_hat_ito(zero_bm), DegeneratePath);
    const SamplePath one = constant_path(2.0, 10, 1.0, 0.5);
    CHECK_THROWS_AS(theta_tilde(one, 1.0, HurstParameter(0.5)), DomainError);
    CHECK_THROWS_AS(theta_hat_oracle(one, 1.0, HurstParameter(0.5), 1.0), DomainError);
}

TEST_CASE("F statistic") {
    const SamplePath x = constant_path(4.0, 40, 0.5, 0.6);
    CHECK(f_statistic(x, 1.0, 1.0) == 0.0);
    CHECK(f_statistic(x, 1.5, 1.0) == doctest::Approx(-0.5 * 1.0 / 2.0));
}

TEST_CASE("inputs digest tracks the inputs") {
    const SamplePath x = constant_path(2.0, 10, 1.0, 0.6);
    const HurstParameter h(0.6);
    CHECK(theta_tilde(x, 1.0, h).inputs_digest == theta_tilde(x, 1.0, h).inputs_digest);
    CHECK(theta_tilde(x, 1.0, h).inputs_digest != theta_tilde(x, 2.0, h).inputs_digest);
    CHECK(theta_hat_prime(x).inputs_digest != theta_hat_prime(scaled(x, 2.0)).inputs_digest);
}

TEST_CASE("grid refinement moves estimates by less than their sampling spread") {
    for (double h : {0.5, 0.6}) {
        const FouParams p(1.0, 1.0, HurstParameter(h));
        const double t = 200.0;
        const double spread = std::sqrt(clt_variances(p).var_hat / t);
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const SamplePath fine_b = generate_fbm(TimeGrid::with_step(t, 0.005), p.h, seed);
            SamplePath coarse_b{TimeGrid::with_step(t, 0.01), {}, PathLabel::Fbm, p.h};
            for (std::size_t k = 0; k < fine_b.values.size(); k += 2) {
                coarse_b.values.push_back(fine_b.values[k]);
            }
            const SamplePath fine = simulate_fou(p, fine_b);
            const SamplePath coarse = simulate_fou(p, coarse_b);
            if (h == 0.5) {
                CHECK(std::abs(theta_hat_ito(fine).estimate - theta_hat_ito(coarse).estimate) < spread);
            } else {
                CHECK(std::abs(theta_tilde(fine, 1.0, p.h).estimate -
                               theta_tilde(coarse, 1.0, p.h).estimate) < spread);
                CHECK(std::abs(theta_hat_oracle(fine, 1.0, p.h, 1.0).estimate -
                               theta_hat_oracle(coarse, 1.0, p.h, 1.0).estimate) < spread);
            }
        }
    }
}

TEST_CASE("Monte Carlo: estimators centre on theta") {
    SUBCASE("tilde and oracle, H = 0.6, T = 800") {
        const FouParams p(1.0, 1.0, HurstParameter(0.6));
        const FbmGenerator gen(TimeGrid::with_step(800.0, 0.01), p.h);
        const double corr = correction_integral(1.0, p.h, 800.0);
        std::vector<double> tilde(500), oracle(500);
        for (std::size_t s = 0; s < tilde.size(); ++s) {
            const SamplePath x = simulate_fou(p, gen.generate(100000 + s));
            tilde[s] = theta_tilde(x, 1.0, p.h).estimate;
            oracle[s] = theta_hat_oracle(x, 1.0, p.h, 1.0, corr).estimate;
        }
        const auto a = stats::summarize(tilde), b = stats::summarize(oracle);
        CHECK(std::abs(a.mean - 1.0) < 3.0 * a.std_error);
        CHECK(std::abs(b.mean - 1.0) < 3.0 * b.std_error);
    }
    SUBCASE("ito, H = 1/2, T = 500") {
        const FouParams p(1.0, 1.0, HurstParameter(0.5));
        const FbmGenerator gen(TimeGrid::with_step(500.0, 0.01), p.h);
        std::vector<double> ito(500);
        for (std::size_t s = 0; s < ito.size(); ++s) {
            ito[s] = theta_hat_ito(simulate_fou(p, gen.generate(200000 + s))).estimate;
        }
        const auto a = stats::summarize(ito);
        CHECK(std::abs(a.mean - 1.0) < 3.0 * a.std_error);
    }
    SUBCASE("hat prime tends to zero") {
        const FouParams p(1.0, 1.0, HurstParameter(0.6));
        const FbmGenerator gen(TimeGrid::with_step(1000.0, 0.01), p.h);
        std::vector<double> v(200);
        for (std::size_t s = 0; s < v.size(); ++s) {
            v[s] = theta_hat_prime(simulate_fou(p, gen.generate(300000 + s))).estimate;
        }
        CHECK(stats::summarize(v).mean < 0.01);

        double prev_median = INFINITY;
        for (double t : {100.0, 400.0, 1600.0}) {
            const FbmGenerator g(TimeGrid::with_step(t, 0.01), p.h);
            std::vector<double> m(100);
            for (std::size_t s = 0; s < m.size(); ++s) {
                m[s] = theta_hat_prime(simulate_fou(p, g.generate(400000 + s))).estimate;
            }
            const double med = stats::median(m);
            CHECK(med < prev_median);
            prev_median = med;
        }
    }
}
