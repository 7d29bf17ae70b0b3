#pragma once

// Dense vector kernels behind the coordinate-descent inner loop.
//
// Every kernel has a portable scalar reference and, where the build and the
// running CPU allow it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The
// variant is chosen once at first use; TLASSO_SIMD=scalar|avx2|neon|auto
// overrides the choice. Variants agree to within floating-point reassociation
// error, not bit-for-bit, so reproducibility is per selected ISA.

#include <cstddef>
#include <span>
#include <string_view>

namespace tlasso::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;
    double (*dot)(const double* a, const double* b, std::size_t n) noexcept;
    /// y += a * x
    void (*axpy)(double a, const double* x, double* y, std::size_t n) noexcept;
    double (*sum_squares)(const double* x, std::size_t n) noexcept;
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
}  // namespace scalar

std::string_view isa_name(Isa isa) noexcept;

/// Built into this binary and supported by the running CPU.
bool isa_available(Isa isa) noexcept;

/// Table for a specific variant; throws ValidationError when unavailable.
const KernelTable& table_for(Isa isa);

/// Table used by dot/axpy/sum_squares below.
const KernelTable& active() noexcept;
Isa active_isa() noexcept;

/// Switches the process-wide variant (tests and the CLI use this).
void select_isa(Isa isa);

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double a, std::span<const double> x, std::span<double> y) noexcept {
    active().axpy(a, x.data(), y.data(), x.size());
}

inline double sum_squares(std::span<const double> x) noexcept {
    return active().sum_squares(x.data(), x.size());
}

}  // namespace tlasso::kernels
