#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fou/error.hpp"
#include "fou/fft.hpp"
#include "fou/kernels/kernels.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <numbers>
#include <random>
#include <vector>

using namespace fou;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> v(n);
    for (double& x : v) x = normal(rng);
    return v;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<std::complex<double>> naive_dft(const std::vector<double>& re,
                                            const std::vector<double>& im) {
    const std::size_t n = re.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        long double sr = 0, si = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const long double a = -2.0L * std::numbers::pi_v<long double> *
                                  static_cast<long double>((j * k) % n) / static_cast<long double>(n);
            sr += re[j] * std::cos(a) - im[j] * std::sin(a);
            si += re[j] * std::sin(a) + im[j] * std::cos(a);
        }
        out[k] = {static_cast<double>(sr), static_cast<double>(si)};
    }
    return out;
}

} // namespace

TEST_CASE("scalar reductions match a direct sum") {
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 100u, 1001u}) {
        const auto x = random_vector(n, 11 + n);
        double ss = 0.0, fc = 0.0;
        for (std::size_t i = 0; i < n; ++i) ss += x[i] * x[i];
        for (std::size_t i = 0; i + 1 < n; ++i) fc += x[i] * (x[i + 1] - x[i]);
        CHECK(kernels::scalar::sum_squares(x.data(), n) == doctest::Approx(ss).epsilon(1e-13));
        CHECK(kernels::scalar::forward_cross_sum(x.data(), n) ==
              doctest::Approx(fc).epsilon(1e-12).scale(1.0 + std::abs(ss)));
    }
}

TEST_CASE("forward cross sum obeys summation by parts") {
    // Σ x_k (x_{k+1} - x_k) = ½(x_n² - x_0²) - ½ Σ (x_{k+1} - x_k)²
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto x = random_vector(50 + seed * 13, seed);
        double sq = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) sq += (x[i + 1] - x[i]) * (x[i + 1] - x[i]);
        const double rhs = 0.5 * (x.back() * x.back() - x.front() * x.front()) - 0.5 * sq;
        CHECK(kernels::forward_cross_sum(x) == doctest::Approx(rhs).epsilon(1e-11));
    }
}

#if defined(FOU_HAVE_AVX2)
TEST_CASE("AVX2 kernels are bit-identical to scalar") {
    if (!kernels::isa_available(kernels::Isa::Avx2)) {
        MESSAGE("AVX2 not supported by this CPU; skipped");
        return;
    }
    SUBCASE("reductions") {
        for (std::size_t n = 0; n < 70; ++n) {
            const auto x = random_vector(n, 1000 + n);
            CHECK(bit_equal(kernels::scalar::sum_squares(x.data(), n),
                            kernels::avx2::sum_squares(x.data(), n)));
            CHECK(bit_equal(kernels::scalar::forward_cross_sum(x.data(), n),
                            kernels::avx2::forward_cross_sum(x.data(), n)));
        }
        const auto big = random_vector(100003, 5);
        CHECK(bit_equal(kernels::scalar::sum_squares(big.data(), big.size()),
                        kernels::avx2::sum_squares(big.data(), big.size())));
        CHECK(bit_equal(kernels::scalar::forward_cross_sum(big.data(), big.size()),
                        kernels::avx2::forward_cross_sum(big.data(), big.size())));
    }
    SUBCASE("butterfly stage") {
        for (std::size_t n : {2u, 4u, 8u, 16u, 64u, 1024u}) {
            for (std::size_t half = 1; half < n; half *= 2) {
                auto re_a = random_vector(n, n + half);
                auto im_a = random_vector(n, 7 * n + half);
                auto re_b = re_a, im_b = im_a;
                const auto wr = random_vector(half, half);
                const auto wi = random_vector(half, half + 99);
                kernels::scalar::radix2_stage(re_a.data(), im_a.data(), n, half, wr.data(), wi.data());
                kernels::avx2::radix2_stage(re_b.data(), im_b.data(), n, half, wr.data(), wi.data());
                bool same = true;
                for (std::size_t i = 0; i < n; ++i) {
                    same = same && bit_equal(re_a[i], re_b[i]) && bit_equal(im_a[i], im_b[i]);
                }
                CHECK(same);
            }
        }
    }
    SUBCASE("whole FFT under either dispatch") {
        const Radix2Fft fft(4096);
        auto re_a = random_vector(4096, 1), im_a = random_vector(4096, 2);
        auto re_b = re_a, im_b = im_a;
        const kernels::Isa before = kernels::active_isa();
        kernels::select_isa(kernels::Isa::Scalar);
        fft.forward(re_a, im_a);
        kernels::select_isa(kernels::Isa::Avx2);
        fft.forward(re_b, im_b);
        kernels::select_isa(before);
        bool same = true;
        for (std::size_t i = 0; i < re_a.size(); ++i) {
            same = same && bit_equal(re_a[i], re_b[i]) && bit_equal(im_a[i], im_b[i]);
        }
        CHECK(same);
    }
}
#endif

TEST_CASE("selecting an unavailable ISA throws") {
    if (!kernels::isa_available(kernels::Isa::Avx2)) {
        CHECK_THROWS_AS(kernels::select_isa(kernels::Isa::Avx2), DomainError);
    }
    CHECK_NOTHROW(kernels::select_isa(kernels::active_isa()));
    CHECK(kernels::isa_name(kernels::Isa::Scalar) == "scalar");
}

TEST_CASE("radix-2 FFT matches a direct DFT") {
    for (std::size_t n : {1u, 2u, 4u, 8u, 32u, 256u}) {
        const auto re0 = random_vector(n, 3 * n), im0 = random_vector(n, 3 * n + 1);
        auto re = re0, im = im0;
        Radix2Fft(n).forward(re, im);
        const auto ref = naive_dft(re0, im0);
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            err = std::max(err, std::abs(std::complex<double>(re[k], im[k]) - ref[k]));
        }
        CHECK(err < 1e-12 * static_cast<double>(n) + 1e-14);
    }
}

TEST_CASE("FFT of an impulse and of a single tone") {
    const std::size_t n = 64;
    std::vector<double> re(n, 0.0), im(n, 0.0);
    re[0] = 1.0;
    Radix2Fft fft(n);
    fft.forward(re, im);
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(re[k] == doctest::Approx(1.0));
        CHECK(im[k] == doctest::Approx(0.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        re[j] = std::cos(2.0 * std::numbers::pi * 5.0 * static_cast<double>(j) / n);
        im[j] = std::sin(2.0 * std::numbers::pi * 5.0 * static_cast<double>(j) / n);
    }
    fft.forward(re, im);
    for (std::size_t k = 0; k < n; ++k) {
        CHECK(re[k] == doctest::Approx(k == 5 ? 64.0 : 0.0).epsilon(1e-12).scale(64.0));
        CHECK(im[k] == doctest::Approx(0.0).scale(64.0));
    }
}

TEST_CASE("power-of-two helpers") {
    CHECK(is_power_of_two(1));
    CHECK(is_power_of_two(1024));
    CHECK_FALSE(is_power_of_two(0));
    CHECK_FALSE(is_power_of_two(6));
    CHECK(next_power_of_two(1) == 1);
    CHECK(next_power_of_two(5) == 8);
    CHECK(next_power_of_two(8) == 8);
    CHECK(next_power_of_two(160001) == 262144);
    CHECK_THROWS(Radix2Fft(12));
}
