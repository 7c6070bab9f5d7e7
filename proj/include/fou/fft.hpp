#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fou {

/// In-place forward DFT, X_k = Σ_j x_j e^{-2πijk/n}, for power-of-two n on
/// split-complex storage. The plan (bit reversal and per-stage twiddles) is
/// immutable after construction, so one instance can serve many threads.
class Radix2Fft {
public:
    explicit Radix2Fft(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<double> re, std::span<double> im) const;

private:
    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    // Stage with half-width h stores its h twiddles at offset h - 1.
    std::vector<double> twiddle_re_;
    std::vector<double> twiddle_im_;
};

bool is_power_of_two(std::size_t n) noexcept;

/// Smallest power of two that is >= n (n >= 1).
std::size_t next_power_of_two(std::size_t n) noexcept;

} // namespace fou
