#pragma once

#include "tlasso/core/dataset.hpp"

#include <functional>
#include <optional>
#include <span>

namespace tlasso {

enum class Loss { squared, logistic };

/// lambda >= 0 scales both l1 terms; alpha in [0,1] splits weight between the
/// anchor at zero (alpha) and the anchor at the initial estimate (1 - alpha).
struct PenaltySpec {
    double lambda = 0.0;
    double alpha = 1.0;

    void validate() const;
};

/// What to do with a column whose (1/n)||X_j||^2 is zero.
enum class ZeroColumnPolicy {
    error,              ///< throw ZeroNormColumn
    penalty_minimizer,  ///< the loss ignores beta_j; set it to the penalty's minimizer
};

struct FitConfig {
    Loss loss = Loss::squared;
    int max_sweeps = 100000;  ///< cap on coordinate passes (logistic: outer iterations)
    double tol = 1e-7;  ///< stop when the largest coordinate change in a sweep is below tol
    std::optional<Coefficients> warm;  ///< initial point; zeros when empty
    ZeroColumnPolicy zero_columns = ZeroColumnPolicy::error;
    /// Fit an unpenalized intercept. Off by default: squared-loss data is expected centered.
    bool fit_intercept = false;
    /// Called after every coordinate pass with the pass index (1-based) and current beta.
    /// Squared loss alternates full passes with passes over the free coordinates only.
    std::function<void(int, std::span<const double>)> on_sweep;

    void validate() const;
};

struct FitResult {
    Coefficients coefficients;
    double objective = 0.0;
    int sweeps_used = 0;
    double kkt_residual = 0.0;
    bool converged = false;
    /// Logistic fits: labels arrived coded {-1,+1} and were mapped to {0,1}.
    bool labels_remapped = false;
};

/// Penalized objective: loss + lambda * (alpha ||b||_1 + (1 - alpha) ||b - tilde||_1).
/// Squared loss is (1/2n)||y - X b||^2; logistic loss is (1/n) sum log(1 + exp(-(2y - 1) x'b)).
double objective(const Coefficients& beta, const Dataset& d, const PenaltySpec& pen,
                 const Coefficients& tilde, Loss loss);

/// Cyclic coordinate descent on the objective above. The linear predictor is
/// X b + intercept; the intercept of `tilde` is never used.
FitResult cd_fit(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                 const FitConfig& cfg = {});

/// Largest per-coordinate distance of -grad(loss) from the penalty subdifferential,
/// over the slopes only.
double kkt_check(const Coefficients& beta, const Dataset& d, const PenaltySpec& pen,
                 const Coefficients& tilde, Loss loss);

/// Labels as {0,1}; remaps {-1,+1}. Throws NonBinaryLabels otherwise.
Vector binary_labels(const Vector& y, bool* remapped = nullptr);

}  // namespace tlasso
