#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants.
//
// Every variant evaluates the same floating-point expression tree in the same
// order, so results are bit-identical across ISAs. Reductions use four
// interleaved partial sums (lane j takes indices i ≡ j mod 4), combined as
// (s0 + s1) + (s2 + s3), followed by the sequential tail. The scalar reference
// spells this order out explicitly.

#include <cstddef>
#include <span>
#include <string_view>

namespace fou::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// The variant currently used by the dispatching entry points. Chosen on first
/// use: the best available ISA, unless FOU_SIMD=scalar is set in the
/// environment.
Isa active_isa() noexcept;

/// Throws DomainError if `isa` is not available.
void select_isa(Isa isa);

/// Σ x_i².
double sum_squares(std::span<const double> x) noexcept;

/// Σ_{k=0}^{n-2} x_k (x_{k+1} - x_k), the forward (Itô) sum of x dx.
double forward_cross_sum(std::span<const double> x) noexcept;

/// One radix-2 decimation-in-time pass over split-complex data. Butterflies
/// pair index a with a + half inside each block of 2·half; (wr, wi) hold the
/// `half` twiddles of the stage.
void radix2_stage(std::span<double> re, std::span<double> im, std::size_t half,
                  std::span<const double> wr, std::span<const double> wi) noexcept;

namespace scalar {
double sum_squares(const double* x, std::size_t n) noexcept;
double forward_cross_sum(const double* x, std::size_t n) noexcept;
void radix2_stage(double* re, double* im, std::size_t n, std::size_t half,
                  const double* wr, const double* wi) noexcept;
} // namespace scalar

#if defined(FOU_HAVE_AVX2)
namespace avx2 {
double sum_squares(const double* x, std::size_t n) noexcept;
double forward_cross_sum(const double* x, std::size_t n) noexcept;
void radix2_stage(double* re, double* im, std::size_t n, std::size_t half,
                  const double* wr, const double* wi) noexcept;
} // namespace avx2
#endif

} // namespace fou::kernels
