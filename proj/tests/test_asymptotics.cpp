#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fou/asymptotics.hpp"
#include "fou/error.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace fou;

namespace {

// Reference values from 30-digit evaluations of the Gamma-function formulas.
struct Frozen {
    double h, sigma_sq, delta, gamma, d, f;
};
constexpr Frozen kFrozen[] = {
    {0.55, 2.46175466908592113, 0.673986964855547231, 445.611216433418793, 111.402804108354698,
     57.0987068687773449},
    {0.6, 3.13049516849970520, 0.950080810139634274, 131.955668074949273, 32.9889170187373183,
     18.2358248271380424},
    {0.7, 7.62492235949961570, 2.94128459753688131, 75.0327703453286701, 18.7581925863321619,
     14.3299840009251835},
};

std::vector<double> open_grid() {
    std::vector<double> hs;
    for (int i = 1; i < 250; ++i) hs.push_back(0.5 + 0.001 * i);
    return hs;
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

} // namespace

TEST_CASE("values at H = 1/2") {
    CHECK(std::abs(delta_h(0.5) - 0.5) < 1e-12);
    CHECK(std::abs(sigma_h_squared(0.5) - 2.0) < 1e-12);
    CHECK(alpha_h(0.5) == 0.0);
    const CltVariances v = clt_variances(FouParams(1.0, 1.0, HurstParameter(0.5)));
    CHECK(v.var_hat == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_FALSE(v.var_tilde.has_value());
}

TEST_CASE("frozen regression values") {
    for (const Frozen& f : kFrozen) {
        CAPTURE(f.h);
        CHECK(rel_close(sigma_h_squared(f.h), f.sigma_sq, 1e-13));
        CHECK(rel_close(delta_h(f.h), f.delta, 1e-13));
        CHECK(rel_close(gamma_h(f.h), f.gamma, 1e-13));
        CHECK(rel_close(d_h_closed(f.h), f.d, 1e-13));
        CHECK(rel_close(f_h(f.h), f.f, 1e-13));
    }
}

TEST_CASE("cross identities on a dense grid (property)") {
    for (double h : open_grid()) {
        CAPTURE(h);
        const double hg = h * std::tgamma(2.0 * h);
        const double a = alpha_h(h);
        CHECK(rel_close(sigma_h_squared(h), delta_h(h) / (hg * hg), 1e-12));
        CHECK(rel_close(delta_h(h), a * a * gamma_h(h) / 2.0, 1e-12));
        CHECK(rel_close(gamma_h(h), 4.0 * d_h_closed(h), 1e-12));
        CHECK(sigma_h_squared(h) > 0.0);
        CHECK(delta_h(h) > 0.0);
        CHECK(gamma_h(h) > 0.0);
        CHECK(d_h_closed(h) > 0.0);
        CHECK(f_h(h) > 0.0);
    }
}

TEST_CASE("divergence at the upper end of the domain") {
    CHECK(sigma_h_squared(0.7499) > 1e3);
    CHECK(gamma_h(0.7499) > 1e3);
    CHECK(sigma_h_squared(0.7499) > sigma_h_squared(0.74));
    CHECK(delta_h(0.7499) > delta_h(0.74));
    CHECK(gamma_h(0.7499) > gamma_h(0.74));
    CHECK(d_h_closed(0.7499) > d_h_closed(0.74));
}

TEST_CASE("domain checks") {
    for (double h : {0.49, 0.75, 0.8}) {
        CHECK_THROWS_AS(sigma_h_squared(h), DomainError);
        CHECK_THROWS_AS(delta_h(h), DomainError);
    }
    for (double h : {0.5, 0.75}) {
        CHECK_THROWS_AS(gamma_h(h), DomainError);
        CHECK_THROWS_AS(d_h_closed(h), DomainError);
        CHECK_THROWS_AS(f_h(h), DomainError);
        CHECK_THROWS_AS(d_h_numeric(h, 100, 1), DomainError);
    }
    CHECK_THROWS_AS(lemma_a1_value(0.5), DomainError);
    CHECK_THROWS_AS(lemma_a1_value(1.0), DomainError);
    CHECK_THROWS_AS(clt_variances(FouParams(1.0, 1.0, HurstParameter(0.75))), DomainError);
}

TEST_CASE("double-integral representation equals Gamma(2H)") {
    for (double h : {0.55, 0.6, 0.65, 0.7, 0.75, 0.9}) {
        CAPTURE(h);
        CHECK(std::abs(lemma_a1_value(h) - std::tgamma(2.0 * h)) < 1e-8);
    }
    CHECK(std::abs(lemma_a1_value(0.75) - std::sqrt(std::numbers::pi) / 2.0) < 1e-8);
    CHECK(std::abs(lemma_a1_value(0.6) - 0.918168742399760611) < 1e-8);
    CHECK(std::abs(lemma_a1_value(0.5001) - 1.0) < 1e-3);
}

TEST_CASE("finite-T F variance for Brownian noise") {
    // The approach to σ⁴/(2θ) is 1/(4θ²T) from below.
    CHECK(0.5 - finite_t_variance_bm(1.0, 1.0, 1e4) == doctest::Approx(2.5e-5).epsilon(1e-9));
    CHECK(std::abs(finite_t_variance_bm(1.0, 1.0, 1e6) - 0.5) < 1e-6);
    CHECK(finite_t_variance_bm(1.0, 1.0, 200.0) ==
          doctest::Approx(0.5 - (1.0 - std::exp(-400.0)) / 800.0).epsilon(1e-14));
    CHECK(finite_t_variance_bm(1.0, 1.0, 200.0) == doctest::Approx(0.49875).epsilon(1e-12));
    for (double sigma : {0.5, 2.0, 3.0}) {
        CHECK(finite_t_variance_bm(0.7, sigma, 13.0) ==
              doctest::Approx(std::pow(sigma, 4) * finite_t_variance_bm(0.7, 1.0, 13.0)).epsilon(1e-14));
    }
    // Small T: expm1 keeps the cancellation accurate, value ≈ σ⁴T/2·(1 - 2θT/3).
    CHECK(finite_t_variance_bm(1.0, 1.0, 1e-6) == doctest::Approx(0.5e-6).epsilon(1e-5));
}

TEST_CASE("CLT variances") {
    for (double h : {0.55, 0.6, 0.7}) {
        const CltVariances one = clt_variances(FouParams(1.0, 1.0, HurstParameter(h)));
        const CltVariances two = clt_variances(FouParams(2.0, 1.0, HurstParameter(h)));
        CHECK(two.var_hat / one.var_hat == 2.0);
        CHECK(one.var_hat == doctest::Approx(sigma_h_squared(h)).epsilon(1e-15));
        CHECK(*one.var_tilde == doctest::Approx(sigma_h_squared(h) / (4 * h * h)).epsilon(1e-15));
    }
}

TEST_CASE("constants table") {
    const ConstantsTable t6 = constants_table(0.6, 1.0, 1.0);
    CHECK(t6.gamma_h.has_value());
    CHECK(*t6.correction_limit == doctest::Approx(std::tgamma(0.2)).epsilon(1e-14));
    CHECK(*t6.ergodic_limit == doctest::Approx(0.6 * 0.918168742399760611).epsilon(1e-14));
    CHECK(*t6.f_variance_limit == doctest::Approx(kFrozen[1].delta).epsilon(1e-13));

    const ConstantsTable t5 = constants_table(0.5);
    CHECK(t5.sigma_h_sq.has_value());
    CHECK_FALSE(t5.gamma_h.has_value());
    CHECK_FALSE(t5.correction_limit.has_value());
    CHECK_FALSE(t5.clt_variance_tilde.has_value());

    const ConstantsTable t8 = constants_table(0.8, 2.0, 3.0);
    CHECK_FALSE(t8.sigma_h_sq.has_value());
    CHECK_FALSE(t8.d_h.has_value());
    CHECK(t8.ergodic_limit.has_value());
    CHECK(t8.alpha_h.has_value());
}

TEST_CASE("d_H Monte Carlo oracle") {
    SUBCASE("agrees with the closed form") {
        for (double h : {0.55, 0.6, 0.7}) {
            CAPTURE(h);
            const MonteCarloEstimate e = d_h_numeric(h, 2'000'000, 7);
            CHECK(std::abs(e.estimate - d_h_closed(h)) < 3.0 * e.std_error);
        }
    }
    SUBCASE("standard error halves when n quadruples") {
        const double se1 = d_h_numeric(0.65, 500'000, 3).std_error;
        const double se4 = d_h_numeric(0.65, 2'000'000, 4).std_error;
        CHECK(se1 / se4 == doctest::Approx(2.0).epsilon(0.2));
    }
    SUBCASE("deterministic and independent of the worker count") {
        const MonteCarloEstimate a = d_h_numeric(0.6, 100'000, 11, 1);
        const MonteCarloEstimate b = d_h_numeric(0.6, 100'000, 11, 4);
        const MonteCarloEstimate c = d_h_numeric(0.6, 100'000, 11, 1);
        CHECK(a.estimate == b.estimate);
        CHECK(a.std_error == b.std_error);
        CHECK(a.estimate == c.estimate);
        CHECK(d_h_numeric(0.6, 100'000, 12).estimate != a.estimate);
    }
}
