#include "fou/kernels/kernels.hpp"

#include "fou/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fou::kernels {

namespace {

struct Table {
    Isa isa;
    double (*sum_squares)(const double*, std::size_t) noexcept;
    double (*forward_cross_sum)(const double*, std::size_t) noexcept;
    void (*radix2_stage)(double*, double*, std::size_t, std::size_t, const double*,
                         const double*) noexcept;
};

constexpr Table kScalar{Isa::Scalar, &scalar::sum_squares, &scalar::forward_cross_sum,
                        &scalar::radix2_stage};
#if defined(FOU_HAVE_AVX2)
constexpr Table kAvx2{Isa::Avx2, &avx2::sum_squares, &avx2::forward_cross_sum,
                      &avx2::radix2_stage};
#endif

const Table* table_for(Isa isa) noexcept {
#if defined(FOU_HAVE_AVX2)
    if (isa == Isa::Avx2) return &kAvx2;
#endif
    (void)isa;
    return &kScalar;
}

const Table* initial_table() noexcept {
    if (const char* env = std::getenv("FOU_SIMD"); env && std::string(env) == "scalar") {
        return &kScalar;
    }
    return isa_available(Isa::Avx2) ? table_for(Isa::Avx2) : &kScalar;
}

std::atomic<const Table*>& current() noexcept {
    static std::atomic<const Table*> table{initial_table()};
    return table;
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(FOU_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() noexcept { return current().load(std::memory_order_acquire)->isa; }

void select_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw DomainError("kernel variant '" + std::string(isa_name(isa)) +
                          "' is not available on this build/CPU");
    }
    current().store(table_for(isa), std::memory_order_release);
}

double sum_squares(std::span<const double> x) noexcept {
    return current().load(std::memory_order_acquire)->sum_squares(x.data(), x.size());
}

double forward_cross_sum(std::span<const double> x) noexcept {
    return current().load(std::memory_order_acquire)->forward_cross_sum(x.data(), x.size());
}

void radix2_stage(std::span<double> re, std::span<double> im, std::size_t half,
                  std::span<const double> wr, std::span<const double> wi) noexcept {
    current().load(std::memory_order_acquire)
        ->radix2_stage(re.data(), im.data(), re.size(), half, wr.data(), wi.data());
}

} // namespace fou::kernels
