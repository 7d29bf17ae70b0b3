#pragma once

#include "tlasso/solver.hpp"

#include <limits>
#include <vector>

namespace tlasso {

enum class TrivialSolution { zero, unchanged };

/// Whether beta = tilde satisfies the optimality conditions at `pen`.
bool unchanged_solution_exists(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde);

/// Whether beta = 0 satisfies the optimality conditions at `pen`.
bool zero_solution_exists(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde);

/// Smallest slack over the linear inequalities behind the predicates above;
/// the predicate holds iff the margin is >= 0.
double unchanged_solution_margin(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde);
double zero_solution_margin(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde);

struct LambdaMax {
    double value = 0.0;
    TrivialSolution certifying = TrivialSolution::zero;
    /// Lower end of each branch's feasible lambda range; +inf when the branch is infeasible.
    double zero_branch = std::numeric_limits<double>::infinity();
    double unchanged_branch = std::numeric_limits<double>::infinity();
    /// True when neither branch was feasible and the fallback value was used.
    bool fallback = false;
};

/// Smallest lambda at which either trivial solution is optimal.
/// Throws NoFiniteLambdaMax when neither branch is feasible.
LambdaMax lambda_max(const Dataset& d, double alpha, const Coefficients& tilde);

/// As lambda_max, but when neither branch is feasible returns 1.5 * max_j |x_j'y| / n
/// flagged as a fallback, certifying the zero solution.
LambdaMax lambda_max_or_fallback(const Dataset& d, double alpha, const Coefficients& tilde);

struct PathSpec {
    double alpha = 1.0;
    int n_lambda = 100;
    double ratio = 1e-4;  ///< lambda_min / lambda_max
    Coefficients tilde;

    void validate(Index p) const;
};

struct PathResult {
    std::vector<double> lambdas;  ///< strictly decreasing
    std::vector<FitResult> fits;  ///< aligned with lambdas
    LambdaMax lambda_max;
};

/// n values from top down to top*ratio, equispaced in log scale; endpoints exact.
std::vector<double> log_lambda_grid(double top, int n, double ratio);

/// Grid top actually used by fit_path and cross-validation: lambda_max when
/// positive, otherwise the fallback scale (or 1 if that is zero too).
double path_top(const LambdaMax& lm, const Dataset& d);

/// Warm-started fits along the log grid. The first fit starts from the trivial
/// solution that certifies lambda_max. `stop_after` truncates the path at that
/// grid index (inclusive) when non-negative.
PathResult fit_path(const Dataset& d, const PathSpec& spec, const FitConfig& cfg, int stop_after = -1);

/// Same, over an explicit decreasing grid; the first fit starts from `start`.
PathResult fit_path_on_grid(const Dataset& d, const PathSpec& spec, const FitConfig& cfg,
                            const std::vector<double>& lambdas, const Coefficients& start);

}  // namespace tlasso
