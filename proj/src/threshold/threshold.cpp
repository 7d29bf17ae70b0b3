#include "tlasso/threshold.hpp"

#include "tlasso/error.hpp"

#include <algorithm>
#include <cmath>

namespace tlasso {

void ThresholdParams::validate() const {
    if (!(gamma1 >= 0.0) || !(std::abs(gamma2) <= gamma1) || !std::isfinite(b)) {
        throw ValidationError("threshold parameters need gamma1 >= 0 and |gamma2| <= gamma1");
    }
}

double soft_threshold(double u, double gamma) noexcept {
    if (u > gamma) return u - gamma;
    if (u < -gamma) return u + gamma;
    return 0.0;
}

namespace {

// Case analysis for b > 0. Breakpoints in increasing order:
//   -gamma1 <= gamma2 <= gamma2 + b <= gamma1 + b.
// Boundary z belongs to the flat pieces. The sloped pieces are clamped into the
// range their exact-arithmetic values occupy, which makes the map monotone even
// when z - gamma rounds across a flat value.
double threshold_positive_anchor(double z, double g1, double g2, double b) noexcept {
    if (z < -g1) return std::min(z + g1, 0.0);  // z - gamma1*sgn(z), z < 0
    if (z <= g2) return 0.0;
    const double upper_mid = g2 + b;
    if (z < upper_mid) return std::clamp(z - g2, 0.0, b);  // z - gamma2*sgn(b)
    if (z <= g1 + b) return b;
    return std::max(z - g1, b);  // z - gamma1*sgn(z), z > 0
}

}  // namespace

double transfer_threshold(double z, const ThresholdParams& p) noexcept {
    const double g1 = p.gamma1;
    const double g2 = p.gamma2;
    if (p.b > 0.0) return threshold_positive_anchor(z, g1, g2, p.b);
    if (p.b < 0.0) return -threshold_positive_anchor(-z, g1, g2, -p.b);
    // Coincident anchors: the two subgradients merge into gamma1 * d|v|.
    return soft_threshold(z, g1);
}

}  // namespace tlasso
