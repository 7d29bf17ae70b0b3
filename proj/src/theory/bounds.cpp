#include "tlasso/theory.hpp"

#include "tlasso/error.hpp"

#include <cmath>

namespace tlasso {

void BoundInputs::validate() const {
    if (!(phi > 0.0)) throw InvalidSpec("phi must be > 0");
    if (!(lambda_n > 0.0)) throw InvalidSpec("lambda_n must be > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidSpec("alpha must lie in [0, 1]");
    if (!(c > 0.0)) throw InvalidSpec("c must be > 0");
    if (!(s > 0.0)) throw InvalidSpec("s must be > 0");
    if (!(delta_l1 >= 0.0)) throw InvalidSpec("delta_l1 must be >= 0");
}

double error_bound(const BoundInputs& b) {
    b.validate();
    const double k = (b.alpha + b.c) * (b.alpha + b.c);
    const double lead = k * b.lambda_n * b.lambda_n * b.s / (b.phi * b.phi);
    const double inner = 1.0 + 2.0 * (1.0 - b.alpha) * b.phi * b.delta_l1 / (k * b.lambda_n * b.s);
    const double factor = 1.0 + std::sqrt(inner);
    return lead * factor * factor;
}

double nu_nc(int n, int p, double c, double lambda, double sigma) {
    if (sigma == 0.0) return 0.0;
    return std::exp(-static_cast<double>(n) * c * c * lambda * lambda / (2.0 * sigma * sigma) +
                    std::log(2.0 * static_cast<double>(p)));
}

double two_stage_bound(const BoundInputs& b) {
    b.validate();
    if (!(b.phi_prime > 0.0)) throw InvalidSpec("phi_prime must be > 0");
    if (!(b.lambda_m >= 0.0) || !(b.s_prime >= 0.0)) throw InvalidSpec("lambda_m and s' must be >= 0");
    const double k = (b.alpha + b.c) * (b.alpha + b.c);
    const double lead = k * b.lambda_n * b.lambda_n * b.s / (b.phi * b.phi);
    const double source = 4.0 * (1.0 - b.alpha) * (1.0 + b.c_prime) * b.phi * b.lambda_m * b.s_prime /
                          (k * b.phi_prime * b.lambda_n * b.s);
    const double mismatch = 2.0 * (1.0 - b.alpha) * b.phi * b.delta_l1 / (k * b.lambda_n * b.s);
    const double factor = 1.0 + std::sqrt(1.0 + source + mismatch);
    return lead * factor * factor;
}

std::vector<bool> screening_predicate(const Vector& beta_star, const BoundInputs& b, ScreeningMode mode) {
    const double bound = error_bound(b);
    const double threshold = mode == ScreeningMode::paper_literal ? bound : std::sqrt(bound);
    std::vector<bool> out;
    for (Index j = 0; j < beta_star.size(); ++j) {
        if (beta_star(j) != 0.0) out.push_back(std::abs(beta_star(j)) > threshold);
    }
    return out;
}

}  // namespace tlasso
