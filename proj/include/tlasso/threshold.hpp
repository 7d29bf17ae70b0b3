#pragma once

namespace tlasso {

/// Parameters of the two-anchor threshold. gamma1 = lambda, gamma2 = lambda(2 alpha - 1),
/// b = the anchor coordinate of the initial estimate.
struct ThresholdParams {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double b = 0.0;

    /// Throws ValidationError unless gamma1 >= 0 and |gamma2| <= gamma1.
    void validate() const;

    /// Weight on |v| in the scalar objective: (gamma1 + gamma2) / 2.
    double weight_zero() const noexcept { return 0.5 * (gamma1 + gamma2); }
    /// Weight on |v - b|: (gamma1 - gamma2) / 2.
    double weight_anchor() const noexcept { return 0.5 * (gamma1 - gamma2); }
};

/// sgn(u) * max(|u| - gamma, 0)
double soft_threshold(double u, double gamma) noexcept;

/// argmin_v  (1/2)(v - z)^2 + weight_zero*|v| + weight_anchor*|v - b|.
///
/// Piecewise linear in z with flat steps at 0 and at b. Every returned value is
/// exactly one of 0, b, z - gamma1*sgn(z) or z - gamma2*sgn(b), and the map is
/// nondecreasing in z even under rounding.
double transfer_threshold(double z, const ThresholdParams& p) noexcept;

}  // namespace tlasso
