#include "fou/fft.hpp"

#include "fou/error.hpp"
#include "fou/kernels/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace fou {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

Radix2Fft::Radix2Fft(std::size_t n) : n_(n) {
    if (!is_power_of_two(n)) {
        throw DomainError("FFT size must be a power of two, got " + std::to_string(n));
    }
    bitrev_.resize(n);
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b) {
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        }
        bitrev_[i] = r;
    }
    if (n > 1) {
        twiddle_re_.resize(n - 1);
        twiddle_im_.resize(n - 1);
        for (std::size_t half = 1; half < n; half <<= 1) {
            for (std::size_t j = 0; j < half; ++j) {
                const double angle =
                    -std::numbers::pi * static_cast<double>(j) / static_cast<double>(half);
                twiddle_re_[half - 1 + j] = std::cos(angle);
                twiddle_im_[half - 1 + j] = std::sin(angle);
            }
        }
    }
}

void Radix2Fft::forward(std::span<double> re, std::span<double> im) const {
    if (re.size() != n_ || im.size() != n_) {
        throw DomainError("FFT buffer size does not match the plan");
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t half = 1; half < n_; half <<= 1) {
        const std::span<const double> wr(twiddle_re_.data() + half - 1, half);
        const std::span<const double> wi(twiddle_im_.data() + half - 1, half);
        kernels::radix2_stage(re, im, half, wr, wi);
    }
}

} // namespace fou
