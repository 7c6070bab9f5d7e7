#include "fou/kernels/kernels.hpp"

namespace fou::kernels::scalar {

double sum_squares(const double* x, std::size_t n) noexcept {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * x[i];
        s1 += x[i + 1] * x[i + 1];
        s2 += x[i + 2] * x[i + 2];
        s3 += x[i + 3] * x[i + 3];
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double forward_cross_sum(const double* x, std::size_t n) noexcept {
    if (n < 2) return 0.0;
    const std::size_t terms = n - 1;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t k = 0;
    for (; k + 4 <= terms; k += 4) {
        s0 += x[k] * (x[k + 1] - x[k]);
        s1 += x[k + 1] * (x[k + 2] - x[k + 1]);
        s2 += x[k + 2] * (x[k + 3] - x[k + 2]);
        s3 += x[k + 3] * (x[k + 4] - x[k + 3]);
    }
    double s = (s0 + s1) + (s2 + s3);
    for (; k < terms; ++k) s += x[k] * (x[k + 1] - x[k]);
    return s;
}

void radix2_stage(double* re, double* im, std::size_t n, std::size_t half,
                  const double* wr, const double* wi) noexcept {
    for (std::size_t block = 0; block < n; block += 2 * half) {
        double* ar = re + block;
        double* ai = im + block;
        double* br = ar + half;
        double* bi = ai + half;
        for (std::size_t j = 0; j < half; ++j) {
            const double tr = wr[j] * br[j] - wi[j] * bi[j];
            const double ti = wr[j] * bi[j] + wi[j] * br[j];
            br[j] = ar[j] - tr;
            bi[j] = ai[j] - ti;
            ar[j] = ar[j] + tr;
            ai[j] = ai[j] + ti;
        }
    }
}

} // namespace fou::kernels::scalar
