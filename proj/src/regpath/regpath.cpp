#include "tlasso/regpath.hpp"

#include "tlasso/error.hpp"

#include <algorithm>
#include <cmath>

namespace tlasso {
namespace {

// One optimality inequality of the form  value <= lambda * coef.
struct Inequality {
    double value;
    double coef;
};

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check(const Dataset& d, const Coefficients& tilde) {
    if (tilde.size() != d.p()) throw DimensionMismatch("initial estimate length does not match p");
}

// Residual correlations (1/n) X'r.
Vector correlations(const Dataset& d, const Vector& r) {
    return d.x().transpose() * r / static_cast<double>(d.n());
}

std::vector<Inequality> unchanged_inequalities(const Dataset& d, double alpha, const Coefficients& tilde) {
    check(d, tilde);
    const Vector g = correlations(d, d.y() - d.x() * tilde.beta);
    std::vector<Inequality> out;
    out.reserve(static_cast<std::size_t>(2 * d.p()));
    for (Index j = 0; j < d.p(); ++j) {
        const double s = sgn(tilde.beta(j));
        if (s == 0.0) {
            out.push_back({g(j), 1.0});
            out.push_back({-g(j), 1.0});
        } else {
            out.push_back({g(j), (1.0 - alpha) + alpha * s});
            out.push_back({-g(j), (1.0 - alpha) - alpha * s});
        }
    }
    return out;
}

std::vector<Inequality> zero_inequalities(const Dataset& d, double alpha, const Coefficients& tilde) {
    check(d, tilde);
    const Vector g = correlations(d, d.y());
    std::vector<Inequality> out;
    out.reserve(static_cast<std::size_t>(2 * d.p()));
    for (Index j = 0; j < d.p(); ++j) {
        const double s = sgn(tilde.beta(j));
        if (s == 0.0) {
            out.push_back({g(j), 1.0});
            out.push_back({-g(j), 1.0});
        } else {
            out.push_back({g(j), alpha - (1.0 - alpha) * s});
            out.push_back({-g(j), alpha + (1.0 - alpha) * s});
        }
    }
    return out;
}

bool holds(const std::vector<Inequality>& ineqs, double lambda) {
    return std::all_of(ineqs.begin(), ineqs.end(),
                       [lambda](const Inequality& q) { return q.value <= lambda * q.coef; });
}

double margin(const std::vector<Inequality>& ineqs, double lambda) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& q : ineqs) m = std::min(m, lambda * q.coef - q.value);
    return m;
}

// Lower end of {lambda >= 0 : all inequalities hold}, or +inf when that set is empty.
double feasible_lower_end(const std::vector<Inequality>& ineqs) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double lower = 0.0;
    double upper = inf;
    for (const auto& q : ineqs) {
        if (q.coef > 0.0) {
            lower = std::max(lower, q.value / q.coef);
        } else if (q.coef < 0.0) {
            upper = std::min(upper, q.value / q.coef);
        } else if (q.value > 0.0) {
            return inf;
        }
    }
    return lower <= upper ? lower : inf;
}

}  // namespace

bool unchanged_solution_exists(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde) {
    pen.validate();
    return holds(unchanged_inequalities(d, pen.alpha, tilde), pen.lambda);
}

bool zero_solution_exists(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde) {
    pen.validate();
    return holds(zero_inequalities(d, pen.alpha, tilde), pen.lambda);
}

double unchanged_solution_margin(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde) {
    return margin(unchanged_inequalities(d, pen.alpha, tilde), pen.lambda);
}

double zero_solution_margin(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde) {
    return margin(zero_inequalities(d, pen.alpha, tilde), pen.lambda);
}

LambdaMax lambda_max(const Dataset& d, double alpha, const Coefficients& tilde) {
    PenaltySpec{0.0, alpha}.validate();
    LambdaMax out;
    out.zero_branch = feasible_lower_end(zero_inequalities(d, alpha, tilde));
    out.unchanged_branch = feasible_lower_end(unchanged_inequalities(d, alpha, tilde));
    if (std::isinf(out.zero_branch) && std::isinf(out.unchanged_branch)) throw NoFiniteLambdaMax();
    // Ties go to the zero solution.
    if (out.zero_branch <= out.unchanged_branch) {
        out.value = out.zero_branch;
        out.certifying = TrivialSolution::zero;
    } else {
        out.value = out.unchanged_branch;
        out.certifying = TrivialSolution::unchanged;
    }
    return out;
}

LambdaMax lambda_max_or_fallback(const Dataset& d, double alpha, const Coefficients& tilde) {
    try {
        return lambda_max(d, alpha, tilde);
    } catch (const NoFiniteLambdaMax&) {
        LambdaMax out;
        out.value = 1.5 * correlations(d, d.y()).cwiseAbs().maxCoeff();
        out.certifying = TrivialSolution::zero;
        out.fallback = true;
        return out;
    }
}

void PathSpec::validate(Index p) const {
    PenaltySpec{0.0, alpha}.validate();
    if (n_lambda < 2) throw InvalidSpec("n_lambda must be >= 2");
    if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidSpec("ratio must lie in (0, 1)");
    if (tilde.size() != p) throw DimensionMismatch("initial estimate length does not match p");
}

std::vector<double> log_lambda_grid(double top, int n, double ratio) {
    if (n < 2) throw InvalidSpec("grid needs at least two points");
    if (!(top > 0.0)) throw InvalidSpec("grid top must be positive");
    std::vector<double> grid(static_cast<std::size_t>(n));
    const double log_top = std::log(top);
    const double log_span = std::log(ratio);
    for (int i = 0; i < n; ++i) {
        grid[static_cast<std::size_t>(i)] = std::exp(log_top + log_span * i / (n - 1));
    }
    grid.front() = top;
    grid.back() = top * ratio;
    return grid;
}

double path_top(const LambdaMax& lm, const Dataset& d) {
    if (lm.value > 0.0) return lm.value;
    const double scale = 1.5 * correlations(d, d.y()).cwiseAbs().maxCoeff();
    return scale > 0.0 ? scale : 1.0;
}

PathResult fit_path_on_grid(const Dataset& d, const PathSpec& spec, const FitConfig& cfg,
                            const std::vector<double>& lambdas, const Coefficients& start) {
    spec.validate(d.p());
    PathResult out;
    out.lambdas = lambdas;
    out.fits.reserve(lambdas.size());
    FitConfig step_cfg = cfg;
    step_cfg.warm = start;
    for (double lambda : lambdas) {
        FitResult fit = cd_fit(d, {lambda, spec.alpha}, spec.tilde, step_cfg);
        step_cfg.warm = fit.coefficients;
        out.fits.push_back(std::move(fit));
    }
    return out;
}

PathResult fit_path(const Dataset& d, const PathSpec& spec, const FitConfig& cfg, int stop_after) {
    spec.validate(d.p());
    const LambdaMax lm = lambda_max_or_fallback(d, spec.alpha, spec.tilde);
    std::vector<double> grid = log_lambda_grid(path_top(lm, d), spec.n_lambda, spec.ratio);
    if (stop_after >= 0 && static_cast<std::size_t>(stop_after) + 1 < grid.size()) {
        grid.resize(static_cast<std::size_t>(stop_after) + 1);
    }
    const Coefficients start =
        lm.certifying == TrivialSolution::unchanged ? Coefficients{spec.tilde.beta, 0.0} : Coefficients::zeros(d.p());
    PathResult out = fit_path_on_grid(d, spec, cfg, grid, start);
    out.lambda_max = lm;
    return out;
}

}  // namespace tlasso
