#include "tlasso/model_select.hpp"

#include "tlasso/error.hpp"
#include "tlasso/sim/metrics.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tlasso {

void CvSpec::validate(Index n) const {
    if (k < 2) throw InvalidSpec("k must be >= 2");
    if (static_cast<Index>(k) > n) throw KTooLarge(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    if (alphas.empty()) throw InvalidSpec("alphas must be nonempty");
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw InvalidSpec("alphas must lie in [0, 1]");
    }
    if (n_lambda < 2) throw InvalidSpec("n_lambda must be >= 2");
    if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidSpec("ratio must lie in (0, 1)");
}

std::vector<std::vector<Index>> kfold_split(Index n, int k, std::uint64_t seed) {
    if (k < 1) throw InvalidSpec("k must be >= 1");
    if (static_cast<Index>(k) > n) throw KTooLarge(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), Index{0});
    CounterRng rng(derive_seed(seed, {0x6b666f6c64ULL}));
    // Fisher-Yates with an explicit bounded draw, independent of the standard library's shuffle.
    for (std::size_t i = perm.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
        std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
    }
    std::vector<std::vector<Index>> folds(static_cast<std::size_t>(k));
    const Index base = n / k;
    const Index extra = n % k;
    std::size_t pos = 0;
    for (Index f = 0; f < k; ++f) {
        const Index size = base + (f < extra ? 1 : 0);
        auto& fold = folds[static_cast<std::size_t>(f)];
        fold.assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                    perm.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(size)));
        std::sort(fold.begin(), fold.end());
        pos += static_cast<std::size_t>(size);
    }
    return folds;
}

namespace {

double score(CvMetric metric, const Vector& y, const Vector& eta, Loss loss) {
    switch (metric) {
        case CvMetric::mse:
            return mean_squared_error(y, eta);
        case CvMetric::deviance:
            if (loss == Loss::squared) return mean_squared_error(y, eta);
            return binomial_deviance(binary_labels(y), eta);
        case CvMetric::auc:
            try {
                return auc(eta, y);
            } catch (const DegenerateLabels&) {
                return std::nan("");
            }
    }
    return std::nan("");
}

// Held-out metric at every grid point of one alpha for one fold.
std::vector<double> fold_scores(const Dataset& d, const std::vector<Index>& held_out, double alpha,
                                const std::vector<double>& grid, TrivialSolution start_kind,
                                const Coefficients& tilde, const CvSpec& spec, const FitConfig& cfg) {
    std::vector<char> is_test(static_cast<std::size_t>(d.n()), 0);
    for (Index i : held_out) is_test[static_cast<std::size_t>(i)] = 1;
    std::vector<Index> train_rows;
    for (Index i = 0; i < d.n(); ++i) {
        if (!is_test[static_cast<std::size_t>(i)]) train_rows.push_back(i);
    }
    const Dataset train = d.subset(train_rows);
    const Dataset test = d.subset(held_out);

    const bool classify = cfg.loss == Loss::logistic;
    StandardizeOptions opts;
    opts.center_response = !classify;
    opts.constant_columns = ConstantColumnPolicy::keep_unscaled;
    const auto [train_std, scaler] = standardize(train, opts);

    PathSpec path;
    path.alpha = alpha;
    path.n_lambda = static_cast<int>(grid.size());
    path.ratio = spec.ratio;
    path.tilde = to_standardized_scale(tilde, scaler);

    FitConfig fold_cfg = cfg;
    fold_cfg.zero_columns = ZeroColumnPolicy::penalty_minimizer;
    fold_cfg.fit_intercept = classify || cfg.fit_intercept;
    fold_cfg.on_sweep = nullptr;
    const Coefficients start = start_kind == TrivialSolution::unchanged ? Coefficients{path.tilde.beta, 0.0}
                                                                        : Coefficients::zeros(d.p());
    const PathResult fits = fit_path_on_grid(train_std, path, fold_cfg, grid, start);

    std::vector<double> out;
    out.reserve(grid.size());
    for (const auto& fit : fits.fits) {
        const Coefficients raw = destandardize(fit.coefficients, scaler);
        Vector eta = test.x() * raw.beta;
        eta.array() += raw.intercept;
        out.push_back(score(spec.metric, test.y(), eta, cfg.loss));
    }
    return out;
}

}  // namespace

CvResult cross_validate(const Dataset& d, const CvSpec& spec, const Coefficients& tilde, const FitConfig& cfg) {
    spec.validate(d.n());
    cfg.validate();
    if (tilde.size() != d.p()) throw DimensionMismatch("initial estimate length does not match p");

    const auto folds = kfold_split(d.n(), spec.k, spec.seed);
    const std::size_t n_alpha = spec.alphas.size();
    const auto n_fold = static_cast<std::size_t>(spec.k);

    CvResult result;
    std::vector<std::vector<double>> grids(n_alpha);
    for (std::size_t a = 0; a < n_alpha; ++a) {
        result.lambda_max.push_back(lambda_max_or_fallback(d, spec.alphas[a], tilde));
        grids[a] = log_lambda_grid(path_top(result.lambda_max[a], d), spec.n_lambda, spec.ratio);
    }

    // scores[a * n_fold + f][l]
    std::vector<std::vector<double>> scores(n_alpha * n_fold);
    parallel_for(n_alpha * n_fold, [&](std::size_t unit) {
        const std::size_t a = unit / n_fold;
        const std::size_t f = unit % n_fold;
        scores[unit] = fold_scores(d, folds[f], spec.alphas[a], grids[a], result.lambda_max[a].certifying, tilde,
                                   spec, cfg);
    });

    const bool maximize = spec.metric == CvMetric::auc;
    std::size_t best = 0;
    for (std::size_t a = 0; a < n_alpha; ++a) {
        for (std::size_t l = 0; l < grids[a].size(); ++l) {
            std::vector<double> values;
            for (std::size_t f = 0; f < n_fold; ++f) {
                const double v = scores[a * n_fold + f][l];
                if (!std::isnan(v)) values.push_back(v);
            }
            const MeanSd ms = mean_sd(values);
            CvCell cell{spec.alphas[a], grids[a][l], values.empty() ? std::nan("") : ms.mean, ms.sd,
                        static_cast<int>(values.size())};
            result.table.push_back(cell);
        }
    }
    // Best mean; ties go to the larger lambda, then the larger alpha.
    const auto better = [maximize](const CvCell& c, const CvCell& incumbent) {
        if (std::isnan(c.mean)) return false;
        if (std::isnan(incumbent.mean)) return true;
        if (c.mean != incumbent.mean) return maximize ? c.mean > incumbent.mean : c.mean < incumbent.mean;
        if (c.lambda != incumbent.lambda) return c.lambda > incumbent.lambda;
        return c.alpha > incumbent.alpha;
    };
    for (std::size_t i = 1; i < result.table.size(); ++i) {
        if (better(result.table[i], result.table[best])) best = i;
    }
    result.best_alpha = result.table[best].alpha;
    result.best_lambda = result.table[best].lambda;

    // Refit along the selected alpha's grid down to the selected lambda.
    const std::size_t a = best / static_cast<std::size_t>(spec.n_lambda);
    const std::size_t l = best % static_cast<std::size_t>(spec.n_lambda);
    std::vector<double> head(grids[a].begin(), grids[a].begin() + static_cast<std::ptrdiff_t>(l + 1));
    PathSpec path;
    path.alpha = spec.alphas[a];
    path.n_lambda = spec.n_lambda;
    path.ratio = spec.ratio;
    path.tilde = tilde;
    FitConfig refit_cfg = cfg;
    if (cfg.loss == Loss::logistic) refit_cfg.fit_intercept = true;
    const Coefficients start = result.lambda_max[a].certifying == TrivialSolution::unchanged
                                   ? Coefficients{tilde.beta, 0.0}
                                   : Coefficients::zeros(d.p());
    PathResult refit = fit_path_on_grid(d, path, refit_cfg, head, start);
    result.refit = std::move(refit.fits.back());
    return result;
}

}  // namespace tlasso
