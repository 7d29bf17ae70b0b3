#pragma once

#include "tlasso/core/dataset.hpp"

#include <vector>

namespace tlasso {

/// Mann-Whitney AUC: P(score of a random positive > score of a random negative),
/// ties counted 1/2. Labels must be 0/1 (or -1/+1). Throws DegenerateLabels when
/// either class is empty.
double auc(const Vector& scores, const Vector& labels);

/// Euclidean norm of a - b.
double l2_error(const Vector& a, const Vector& b);

/// |supp(estimate) intersect supp(truth)|.
int correct_selected(const Vector& estimate, const Vector& truth);

/// Mean squared error of y against predictions.
double mean_squared_error(const Vector& y, const Vector& pred);

/// Binomial deviance per observation, 2 * mean log(1 + exp(-(2y-1) eta)), y in {0,1}.
double binomial_deviance(const Vector& y, const Vector& eta);

/// Mean and sample standard deviation (0 for a single value).
struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};
MeanSd mean_sd(const std::vector<double>& values);

}  // namespace tlasso
