#include "kernels_impl.hpp"

#include "tlasso/error.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace tlasso::kernels {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::dot, &scalar::axpy, &scalar::sum_squares};
#if defined(TLASSO_BUILD_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dot, &avx2::axpy, &avx2::sum_squares};
#endif
#if defined(TLASSO_BUILD_NEON)
constexpr KernelTable kNeon{Isa::neon, &neon::dot, &neon::axpy, &neon::sum_squares};
#endif

bool cpu_supports(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(TLASSO_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
#if defined(TLASSO_BUILD_NEON)
            return true;  // mandatory on aarch64
#else
            return false;
#endif
    }
    return false;
}

const KernelTable* initial_table() {
    Isa wanted = Isa::scalar;
    if (isa_available(Isa::avx2)) wanted = Isa::avx2;
    if (isa_available(Isa::neon)) wanted = Isa::neon;
    if (const char* env = std::getenv("TLASSO_SIMD")) {
        const std::string v(env);
        if (v == "scalar") wanted = Isa::scalar;
        else if (v == "avx2" && isa_available(Isa::avx2)) wanted = Isa::avx2;
        else if (v == "neon" && isa_available(Isa::neon)) wanted = Isa::neon;
    }
    return &table_for(wanted);
}

std::atomic<const KernelTable*>& current() {
    static std::atomic<const KernelTable*> table{initial_table()};
    return table;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::neon: return "neon";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept { return cpu_supports(isa); }

const KernelTable& table_for(Isa isa) {
    if (!isa_available(isa)) {
        throw ValidationError("kernel variant '" + std::string(isa_name(isa)) + "' is not available");
    }
    switch (isa) {
#if defined(TLASSO_BUILD_AVX2)
        case Isa::avx2: return kAvx2;
#endif
#if defined(TLASSO_BUILD_NEON)
        case Isa::neon: return kNeon;
#endif
        default: return kScalar;
    }
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

Isa active_isa() noexcept { return active().isa; }

void select_isa(Isa isa) { current().store(&table_for(isa), std::memory_order_relaxed); }

}  // namespace tlasso::kernels
