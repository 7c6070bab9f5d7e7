// Compiled with -mavx2 only (no -mfma): every product and sum rounds exactly
// like the scalar reference.

#include "fou/kernels/kernels.hpp"

#include <immintrin.h>

namespace fou::kernels::avx2 {

namespace {

// (s0 + s1) + (s2 + s3), matching the scalar lane combination.
inline double combine_lanes(__m256d acc) noexcept {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

} // namespace

double sum_squares(const double* x, std::size_t n) noexcept {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = combine_lanes(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double forward_cross_sum(const double* x, std::size_t n) noexcept {
    if (n < 2) return 0.0;
    const std::size_t terms = n - 1;
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= terms; k += 4) {
        const __m256d cur = _mm256_loadu_pd(x + k);
        const __m256d next = _mm256_loadu_pd(x + k + 1);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(cur, _mm256_sub_pd(next, cur)));
    }
    double s = combine_lanes(acc);
    for (; k < terms; ++k) s += x[k] * (x[k + 1] - x[k]);
    return s;
}

void radix2_stage(double* re, double* im, std::size_t n, std::size_t half,
                  const double* wr, const double* wi) noexcept {
    if (half < 4) {
        scalar::radix2_stage(re, im, n, half, wr, wi);
        return;
    }
    for (std::size_t block = 0; block < n; block += 2 * half) {
        double* ar = re + block;
        double* ai = im + block;
        double* br = ar + half;
        double* bi = ai + half;
        for (std::size_t j = 0; j < half; j += 4) {
            const __m256d vwr = _mm256_loadu_pd(wr + j);
            const __m256d vwi = _mm256_loadu_pd(wi + j);
            const __m256d vbr = _mm256_loadu_pd(br + j);
            const __m256d vbi = _mm256_loadu_pd(bi + j);
            const __m256d var = _mm256_loadu_pd(ar + j);
            const __m256d vai = _mm256_loadu_pd(ai + j);
            const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(vwr, vbr), _mm256_mul_pd(vwi, vbi));
            const __m256d ti = _mm256_add_pd(_mm256_mul_pd(vwr, vbi), _mm256_mul_pd(vwi, vbr));
            _mm256_storeu_pd(br + j, _mm256_sub_pd(var, tr));
            _mm256_storeu_pd(bi + j, _mm256_sub_pd(vai, ti));
            _mm256_storeu_pd(ar + j, _mm256_add_pd(var, tr));
            _mm256_storeu_pd(ai + j, _mm256_add_pd(vai, ti));
        }
    }
}

} // namespace fou::kernels::avx2
