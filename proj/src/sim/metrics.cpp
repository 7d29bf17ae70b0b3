#include "tlasso/sim/metrics.hpp"

#include "tlasso/error.hpp"
#include "tlasso/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tlasso {

double auc(const Vector& scores, const Vector& labels) {
    if (scores.size() != labels.size()) throw DimensionMismatch("scores and labels differ in length");
    const Vector y = binary_labels(labels);
    const auto n = static_cast<std::size_t>(scores.size());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores(static_cast<Index>(a)) < scores(static_cast<Index>(b));
    });
    // Rank-sum with midranks for ties.
    double positive_rank_sum = 0.0;
    double positives = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        const double v = scores(static_cast<Index>(order[i]));
        while (j < n && scores(static_cast<Index>(order[j])) == v) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t) {
            if (y(static_cast<Index>(order[t])) == 1.0) {
                positive_rank_sum += midrank;
                positives += 1.0;
            }
        }
        i = j;
    }
    const double negatives = static_cast<double>(n) - positives;
    if (positives == 0.0 || negatives == 0.0) throw DegenerateLabels();
    return (positive_rank_sum - positives * (positives + 1.0) / 2.0) / (positives * negatives);
}

double l2_error(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vectors differ in length");
    return (a - b).norm();
}

int correct_selected(const Vector& estimate, const Vector& truth) {
    if (estimate.size() != truth.size()) throw DimensionMismatch("vectors differ in length");
    int count = 0;
    for (Index j = 0; j < truth.size(); ++j) count += (estimate(j) != 0.0 && truth(j) != 0.0) ? 1 : 0;
    return count;
}

double mean_squared_error(const Vector& y, const Vector& pred) {
    if (y.size() != pred.size()) throw DimensionMismatch("vectors differ in length");
    return (y - pred).squaredNorm() / static_cast<double>(y.size());
}

double binomial_deviance(const Vector& y, const Vector& eta) {
    if (y.size() != eta.size()) throw DimensionMismatch("vectors differ in length");
    double total = 0.0;
    for (Index i = 0; i < y.size(); ++i) {
        const double t = (2.0 * y(i) - 1.0) * eta(i);
        total += std::max(-t, 0.0) + std::log1p(std::exp(-std::abs(t)));
    }
    return 2.0 * total / static_cast<double>(y.size());
}

MeanSd mean_sd(const std::vector<double>& values) {
    MeanSd out;
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

}  // namespace tlasso
