#include <doctest.h>

#include "tlasso/error.hpp"
#include "tlasso/kernels/kernels.hpp"
#include "tlasso/sim/rng.hpp"

#include <cmath>
#include <vector>

using namespace tlasso;
namespace k = tlasso::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v) x = 4.0 * rng.uniform() - 2.0;
    return v;
}

std::vector<k::Isa> available() {
    std::vector<k::Isa> out;
    for (auto isa : {k::Isa::scalar, k::Isa::avx2, k::Isa::neon}) {
        if (k::isa_available(isa)) out.push_back(isa);
    }
    return out;
}

// Reassociation error bound for a length-n reduction of O(1) terms.
double reduction_tol(std::size_t n, double magnitude) { return 1e-15 * static_cast<double>(n + 1) * magnitude; }

}  // namespace

TEST_CASE("scalar kernels match hand arithmetic") {
    const double a[] = {1.0, 2.0, 3.0};
    const double b[] = {4.0, -5.0, 6.0};
    CHECK(k::scalar::dot(a, b, 3) == 12.0);
    CHECK(k::scalar::sum_squares(a, 3) == 14.0);
    double y[] = {1.0, 1.0, 1.0};
    k::scalar::axpy(2.0, a, y, 3);
    CHECK(y[0] == 3.0);
    CHECK(y[1] == 5.0);
    CHECK(y[2] == 7.0);
    CHECK(k::scalar::dot(a, b, 0) == 0.0);
}

TEST_CASE("every available variant agrees with the scalar reference") {
    for (auto isa : available()) {
        CAPTURE(k::isa_name(isa));
        const auto& t = k::table_for(isa);
        // lengths straddle the vector widths and unrolled tails
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 33u, 100u, 1001u}) {
            CAPTURE(n);
            const auto a = random_vector(n, 11 + n);
            const auto b = random_vector(n, 97 + n);
            const double ref_dot = k::scalar::dot(a.data(), b.data(), n);
            CHECK(std::abs(t.dot(a.data(), b.data(), n) - ref_dot) <= reduction_tol(n, 4.0));
            const double ref_ss = k::scalar::sum_squares(a.data(), n);
            CHECK(std::abs(t.sum_squares(a.data(), n) - ref_ss) <= reduction_tol(n, 4.0));

            auto y_ref = b;
            auto y = b;
            k::scalar::axpy(0.37, a.data(), y_ref.data(), n);
            t.axpy(0.37, a.data(), y.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - y_ref[i]) <= 1e-15 * 4.0);
        }
    }
}

TEST_CASE("unaligned pointers are handled") {
    const auto a = random_vector(64, 5);
    const auto b = random_vector(64, 6);
    for (auto isa : available()) {
        const auto& t = k::table_for(isa);
        for (std::size_t off = 1; off < 4; ++off) {
            const std::size_t n = 64 - off;
            CHECK(std::abs(t.dot(a.data() + off, b.data() + off, n) - k::scalar::dot(a.data() + off, b.data() + off, n)) <=
                  reduction_tol(n, 4.0));
        }
    }
}

TEST_CASE("selection switches the active table") {
    const auto before = k::active_isa();
    k::select_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    const std::vector<double> v{3.0, 4.0};
    CHECK(k::sum_squares(v) == 25.0);
    k::select_isa(before);
    CHECK(k::active_isa() == before);
}

TEST_CASE("unavailable variants are rejected") {
    for (auto isa : {k::Isa::avx2, k::Isa::neon}) {
        if (!k::isa_available(isa)) CHECK_THROWS_AS(k::table_for(isa), ValidationError);
    }
}
