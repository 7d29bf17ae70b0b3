#pragma once

#include "tlasso/kernels/kernels.hpp"

namespace tlasso::kernels {

#if defined(TLASSO_BUILD_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
}  // namespace avx2
#endif

#if defined(TLASSO_BUILD_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n) noexcept;
void axpy(double a, const double* x, double* y, std::size_t n) noexcept;
double sum_squares(const double* x, std::size_t n) noexcept;
}  // namespace neon
#endif

}  // namespace tlasso::kernels
