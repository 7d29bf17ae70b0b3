#pragma once

#include "tlasso/regpath.hpp"

#include <cstdint>
#include <vector>

namespace tlasso {

enum class CvMetric { mse, deviance, auc };

struct CvSpec {
    int k = 10;
    std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
    int n_lambda = 100;
    double ratio = 1e-4;
    std::uint64_t seed = 0;
    CvMetric metric = CvMetric::mse;

    void validate(Index n) const;
};

struct CvCell {
    double alpha = 0.0;
    double lambda = 0.0;
    double mean = 0.0;  ///< over folds with a defined metric
    double sd = 0.0;
    int folds = 0;      ///< folds that contributed
};

struct CvResult {
    std::vector<CvCell> table;  ///< alpha-major, lambdas descending within each alpha
    std::vector<LambdaMax> lambda_max;  ///< one per alpha, full data
    double best_alpha = 0.0;
    double best_lambda = 0.0;
    FitResult refit;  ///< full data at the selected pair
};

/// Random partition of 0..n-1 into k folds; the first n % k folds hold one extra index.
std::vector<std::vector<Index>> kfold_split(Index n, int k, std::uint64_t seed);

/// Grid search over alphas x per-alpha lambda grids. Each training split is
/// re-standardized and the held-out split is scored on the raw scale of `d`.
/// cfg.loss picks regression or classification; logistic folds standardize the
/// features only and fit an intercept.
CvResult cross_validate(const Dataset& d, const CvSpec& spec, const Coefficients& tilde, const FitConfig& cfg);

}  // namespace tlasso
