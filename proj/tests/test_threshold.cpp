#include <doctest.h>

#include "tlasso/error.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/threshold.hpp"

#include <cmath>
#include <limits>

using namespace tlasso;

namespace {

ThresholdParams params(double g1, double g2, double b) {
    ThresholdParams p;
    p.gamma1 = g1;
    p.gamma2 = g2;
    p.b = b;
    return p;
}

// Distance of 0 from v - z + wa d|v| + wb d|v - b|.
double stationarity_gap(double v, double z, const ThresholdParams& p) {
    const double wa = p.weight_zero();
    const double wb = p.weight_anchor();
    const auto interval = [](double u) {
        return u > 0 ? std::pair{1.0, 1.0} : (u < 0 ? std::pair{-1.0, -1.0} : std::pair{-1.0, 1.0});
    };
    const auto [a_lo, a_hi] = interval(v);
    const auto [b_lo, b_hi] = interval(v - p.b);
    const double lo = v - z + wa * a_lo + wb * b_lo;
    const double hi = v - z + wa * a_hi + wb * b_hi;
    return std::max({0.0, lo, -hi});
}

}  // namespace

TEST_CASE("soft threshold examples") {
    CHECK(soft_threshold(2.0, 0.5) == 1.5);
    CHECK(soft_threshold(-0.3, 0.5) == 0.0);
    CHECK(soft_threshold(-2.0, 0.5) == -1.5);
    CHECK(soft_threshold(0.5, 0.5) == 0.0);
    CHECK(soft_threshold(1.0, 0.0) == 1.0);
}

TEST_CASE("two-anchor threshold: alpha = 1/2, lambda = 1, b = 0.5") {
    const auto p = params(1.0, 0.0, 0.5);
    CHECK(transfer_threshold(0.2, p) == 0.2);
    CHECK(transfer_threshold(0.8, p) == 0.5);
    CHECK(transfer_threshold(2.0, p) == 1.0);
    CHECK(transfer_threshold(-0.5, p) == 0.0);
}

TEST_CASE("two-anchor threshold: negative anchor mirrors the positive one") {
    const auto p = params(1.0, 0.0, -0.5);
    CHECK(transfer_threshold(-0.2, p) == -0.2);
    CHECK(transfer_threshold(-0.8, p) == -0.5);
    CHECK(transfer_threshold(-2.0, p) == -1.0);
    CHECK(transfer_threshold(0.5, p) == 0.0);
}

TEST_CASE("outputs lie in the four piece families and satisfy stationarity") {
    CounterRng rng(77);
    for (int t = 0; t < 200; ++t) {
        const double g1 = 3.0 * rng.uniform();
        const auto p = params(g1, (2.0 * rng.uniform() - 1.0) * g1, 6.0 * rng.uniform() - 3.0);
        for (int i = 0; i <= 400; ++i) {
            const double z = -10.0 + 0.05 * i;
            const double v = transfer_threshold(z, p);
            const double sz = z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0);
            const double sb = p.b > 0 ? 1.0 : (p.b < 0 ? -1.0 : 0.0);
            const bool family = v == 0.0 || v == p.b || v == z - p.gamma1 * sz || v == z - p.gamma2 * sb;
            CHECK(family);
            CHECK(stationarity_gap(v, z, p) <= 1e-12);
        }
    }
}

TEST_CASE("continuity at the breakpoints") {
    const auto p = params(1.3, 0.4, 0.9);
    for (double z : {-1.3, 0.4, 0.4 + 0.9, 1.3 + 0.9}) {
        const double below = transfer_threshold(std::nextafter(z, -1e9), p);
        const double above = transfer_threshold(std::nextafter(z, 1e9), p);
        CHECK(std::abs(below - above) <= 1e-15);
    }
}

TEST_CASE("alpha = 1 ignores the anchor; alpha = 0 shifts by the anchor") {
    for (double b : {-2.0, -0.1, 0.0, 0.3, 5.0}) {
        for (double z : {-4.0, -1.0, -0.2, 0.0, 0.6, 1.7, 9.0}) {
            CHECK(transfer_threshold(z, params(1.0, 1.0, b)) == soft_threshold(z, 1.0));
            CHECK(transfer_threshold(z, params(1.0, -1.0, b)) == doctest::Approx(b + soft_threshold(z - b, 1.0)).epsilon(1e-15));
        }
    }
}

TEST_CASE("coincident anchors collapse to a soft threshold at gamma1") {
    CHECK(transfer_threshold(2.5, params(1.0, 0.2, 0.0)) == 1.5);
    CHECK(transfer_threshold(-0.7, params(1.0, -0.6, 0.0)) == 0.0);
}

TEST_CASE("monotone on a fine grid, including tiny anchors") {
    for (double b : {1e-300, 1e-17, 0.3}) {
        const auto p = params(0.7, 0.1, b);
        double prev = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < 10000; ++i) {
            const double z = -2.0 + 4.0 * i / 9999.0;
            const double v = transfer_threshold(z, p);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(params(1.0, -1.0, 2.0).validate());
    CHECK_THROWS_AS(params(-1.0, 0.0, 0.0).validate(), ValidationError);
    CHECK_THROWS_AS(params(1.0, 1.5, 0.0).validate(), ValidationError);
    CHECK_THROWS_AS(params(1.0, 0.0, std::nan("")).validate(), ValidationError);
}
