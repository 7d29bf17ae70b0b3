#include "tlasso/solver.hpp"

#include "tlasso/error.hpp"
#include "tlasso/kernels/kernels.hpp"
#include "tlasso/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace tlasso {

void PenaltySpec::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be finite and >= 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
}

void FitConfig::validate() const {
    if (max_sweeps < 1) throw ValidationError("max_sweeps must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("tol must be > 0");
}

Vector binary_labels(const Vector& y, bool* remapped) {
    bool zero_one = true;
    bool plus_minus = true;
    for (Index i = 0; i < y.size(); ++i) {
        const double v = y(i);
        zero_one = zero_one && (v == 0.0 || v == 1.0);
        plus_minus = plus_minus && (v == -1.0 || v == 1.0);
    }
    if (remapped) *remapped = false;
    if (zero_one) return y;
    if (!plus_minus) throw NonBinaryLabels();
    if (remapped) *remapped = true;
    return (y.array() + 1.0) * 0.5;
}

namespace {

void check_dims(const Coefficients& beta, const Dataset& d, const Coefficients& tilde) {
    if (beta.size() != d.p()) {
        throw DimensionMismatch("beta has length " + std::to_string(beta.size()) + ", dataset has p = " +
                                std::to_string(d.p()));
    }
    if (tilde.size() != d.p()) {
        throw DimensionMismatch("initial estimate has length " + std::to_string(tilde.size()) +
                                ", dataset has p = " + std::to_string(d.p()));
    }
}

double penalty(const Vector& beta, const PenaltySpec& pen, const Vector& tilde) {
    return pen.lambda * (pen.alpha * beta.lpNorm<1>() + (1.0 - pen.alpha) * (beta - tilde).lpNorm<1>());
}

// log(1 + exp(-t)) without overflow
double log1p_exp_neg(double t) { return std::max(-t, 0.0) + std::log1p(std::exp(-std::abs(t))); }

double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

double loss_value(const Vector& eta, const Vector& y, Loss loss) {
    const double n = static_cast<double>(y.size());
    if (loss == Loss::squared) return (y - eta).squaredNorm() / (2.0 * n);
    double total = 0.0;
    for (Index i = 0; i < y.size(); ++i) total += log1p_exp_neg((2.0 * y(i) - 1.0) * eta(i));
    return total / n;
}

Vector linear_predictor(const Dataset& d, const Coefficients& c) {
    Vector eta = d.x() * c.beta;
    if (c.intercept != 0.0) eta.array() += c.intercept;
    return eta;
}

Vector loss_gradient(const Coefficients& beta, const Dataset& d, const Vector& y, Loss loss) {
    const double n = static_cast<double>(d.n());
    const Vector eta = linear_predictor(d, beta);
    if (loss == Loss::squared) return -(d.x().transpose() * (y - eta)) / n;
    Vector mu(eta.size());
    for (Index i = 0; i < eta.size(); ++i) mu(i) = sigmoid(eta(i));
    return d.x().transpose() * (mu - y) / n;
}

// Minimizer of alpha|v| + (1 - alpha)|v - b| alone, used for all-zero columns.
double penalty_minimizer(const PenaltySpec& pen, double b) {
    if (pen.lambda == 0.0) return 0.0;
    return pen.alpha < 0.5 ? b : 0.0;
}

class CoordinateDescent {
  public:
    CoordinateDescent(const Dataset& d, const PenaltySpec& pen, const Vector& tilde, const FitConfig& cfg)
        : d_(d), pen_(pen), tilde_(tilde), cfg_(cfg), n_(static_cast<double>(d.n())) {
        nu_.resize(d.p());
        for (Index j = 0; j < d.p(); ++j) nu_(j) = kernels::sum_squares(column(j)) / n_;
    }

    void track_intercept(double* intercept) { intercept_ = intercept; }

    std::span<const double> column(Index j) const {
        return {d_.x().col(j).data(), static_cast<std::size_t>(d_.n())};
    }

    void prepare_zero_columns(Vector& beta) const {
        for (Index j = 0; j < d_.p(); ++j) {
            if (nu_(j) > 0.0) continue;
            if (cfg_.zero_columns == ZeroColumnPolicy::error) throw ZeroNormColumn(static_cast<std::size_t>(j));
            beta(j) = penalty_minimizer(pen_, tilde_(j));
        }
    }

    // Coordinates sitting strictly between or beyond the two anchors.
    std::vector<Index> free_coordinates(const Vector& beta) const {
        std::vector<Index> out;
        for (Index j = 0; j < d_.p(); ++j) {
            if (nu_(j) > 0.0 && beta(j) != 0.0 && beta(j) != tilde_(j)) out.push_back(j);
        }
        return out;
    }

    // One cyclic pass over coordinates (all of them, or `subset`) against residual
    // `r`, where the surrogate loss is (curvature / 2n)||r||^2 in the moving
    // coordinate. `eta`, when given, tracks X beta alongside the residual.
    // Returns the largest change.
    double sweep(Vector& beta, Vector& r, Vector* eta, double curvature_inv,
                 const std::vector<Index>* subset = nullptr) {
        double max_change = 0.0;
        const double two_alpha_minus_one = 2.0 * pen_.alpha - 1.0;
        std::span<double> rs(r.data(), static_cast<std::size_t>(r.size()));
        if (intercept_) {
            const double delta = r.mean();
            if (delta != 0.0) {
                r.array() -= delta;
                if (eta) eta->array() += delta;
                *intercept_ += delta;
                max_change = std::abs(delta);
            }
        }
        const Index count = subset ? static_cast<Index>(subset->size()) : d_.p();
        for (Index k = 0; k < count; ++k) {
            const Index j = subset ? (*subset)[static_cast<std::size_t>(k)] : k;
            const double nu = nu_(j);
            if (!(nu > 0.0)) continue;
            const auto xj = column(j);
            const double z = beta(j) + kernels::dot(xj, rs) / (n_ * nu);
            const double scale = curvature_inv * pen_.lambda / nu;
            const ThresholdParams tp{scale, scale * two_alpha_minus_one, tilde_(j)};
            const double updated = transfer_threshold(z, tp);
            const double delta = updated - beta(j);
            if (delta != 0.0) {
                kernels::axpy(-delta, xj, rs);
                if (eta) kernels::axpy(delta, xj, {eta->data(), static_cast<std::size_t>(eta->size())});
                beta(j) = updated;
                max_change = std::max(max_change, std::abs(delta));
            }
        }
        return max_change;
    }

  private:
    const Dataset& d_;
    const PenaltySpec& pen_;
    const Vector& tilde_;
    const FitConfig& cfg_;
    double n_;
    Vector nu_;
    double* intercept_ = nullptr;
};

}  // namespace

double objective(const Coefficients& beta, const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                 Loss loss) {
    check_dims(beta, d, tilde);
    const Vector y = loss == Loss::logistic ? binary_labels(d.y()) : d.y();
    const Vector eta = linear_predictor(d, beta);
    return loss_value(eta, y, loss) + penalty(beta.beta, pen, tilde.beta);
}

double kkt_check(const Coefficients& beta, const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                 Loss loss) {
    check_dims(beta, d, tilde);
    const Vector y = loss == Loss::logistic ? binary_labels(d.y()) : d.y();
    const Vector grad = loss_gradient(beta, d, y, loss);
    const double w0 = pen.lambda * pen.alpha;
    const double w1 = pen.lambda * (1.0 - pen.alpha);
    double worst = 0.0;
    for (Index j = 0; j < d.p(); ++j) {
        const double b = beta.beta(j);
        const double diff = b - tilde.beta(j);
        const double s1_lo = b != 0.0 ? std::copysign(1.0, b) : -1.0;
        const double s1_hi = b != 0.0 ? std::copysign(1.0, b) : 1.0;
        const double s2_lo = diff != 0.0 ? std::copysign(1.0, diff) : -1.0;
        const double s2_hi = diff != 0.0 ? std::copysign(1.0, diff) : 1.0;
        const double lo = w0 * s1_lo + w1 * s2_lo;
        const double hi = w0 * s1_hi + w1 * s2_hi;
        const double target = -grad(j);
        worst = std::max({worst, lo - target, target - hi});
    }
    return worst;
}

FitResult cd_fit(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde, const FitConfig& cfg) {
    pen.validate();
    cfg.validate();
    if (tilde.size() != d.p()) throw DimensionMismatch("initial estimate length does not match p");
    if (cfg.warm && cfg.warm->size() != d.p()) throw DimensionMismatch("warm start length does not match p");

    FitResult result;
    Vector y = d.y();
    if (cfg.loss == Loss::logistic) y = binary_labels(d.y(), &result.labels_remapped);

    Vector beta = cfg.warm ? cfg.warm->beta : Vector::Zero(d.p());
    double intercept = cfg.warm && cfg.fit_intercept ? cfg.warm->intercept : 0.0;
    CoordinateDescent cd(d, pen, tilde.beta, cfg);
    cd.prepare_zero_columns(beta);
    if (cfg.fit_intercept) cd.track_intercept(&intercept);

    const auto report = [&](int sweep) {
        if (cfg.on_sweep) cfg.on_sweep(sweep, {beta.data(), static_cast<std::size_t>(beta.size())});
    };

    if (cfg.loss == Loss::squared) {
        // Full passes alternate with passes restricted to the free coordinates;
        // convergence is only declared after a full pass.
        Vector r = y - d.x() * beta;
        r.array() -= intercept;
        std::vector<Index> active;
        bool full = true;
        for (int sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
            const double change = cd.sweep(beta, r, nullptr, 1.0, full ? nullptr : &active);
            result.sweeps_used = sweep;
            report(sweep);
            if (full) {
                if (change < cfg.tol) {
                    result.converged = true;
                    break;
                }
                active = cd.free_coordinates(beta);
                full = active.empty();
            } else if (change < cfg.tol) {
                full = true;
            }
        }
    } else {
        // Quadratic majorization with curvature 1/4: working residual 4(y - mu),
        // then one full coordinate pass on the surrogate per outer iteration.
        Vector eta = d.x() * beta;
        eta.array() += intercept;
        Vector r(d.n());
        for (int outer = 1; outer <= cfg.max_sweeps; ++outer) {
            for (Index i = 0; i < d.n(); ++i) r(i) = 4.0 * (y(i) - sigmoid(eta(i)));
            const double change = cd.sweep(beta, r, &eta, 4.0);
            result.sweeps_used = outer;
            report(outer);
            if (change < cfg.tol) {
                result.converged = true;
                break;
            }
        }
    }

    result.coefficients = {beta, intercept};
    const Vector eta = linear_predictor(d, result.coefficients);
    result.objective = loss_value(eta, y, cfg.loss) + penalty(beta, pen, tilde.beta);
    if (result.labels_remapped) {
        const Dataset remapped(d.x(), y, d.column_names());
        result.kkt_residual = kkt_check(result.coefficients, remapped, pen, tilde, cfg.loss);
    } else {
        result.kkt_residual = kkt_check(result.coefficients, d, pen, tilde, cfg.loss);
    }
    return result;
}

}  // namespace tlasso
