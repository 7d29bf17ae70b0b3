#include "tlasso/theory/verify.hpp"

#include "tlasso/error.hpp"
#include "tlasso/regpath.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/theory.hpp"
#include "tlasso/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tlasso {
namespace {

using nlohmann::json;

constexpr double band = 1e-3;

const char* scale_name(VerifyScale s) { return s == VerifyScale::full ? "full" : "quick"; }

int pick(VerifyScale s, int quick, int full) { return s == VerifyScale::full ? full : quick; }

double uniform(CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

int uniform_int(CounterRng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Matrix gaussian_matrix(Index n, Index p, CounterRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x(n, p);
    for (Index j = 0; j < p; ++j) {
        for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
    }
    return x;
}

Vector gaussian_vector(Index n, double sd, CounterRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = sd * normal(rng);
    return v;
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

bool same_signs(const Vector& a, const Vector& b) {
    for (Index j = 0; j < a.size(); ++j) {
        if (sgn(a(j)) != sgn(b(j))) return false;
    }
    return true;
}

SuiteReport finish(const std::string& name, VerifyScale scale, std::uint64_t seed, json params, json counts,
                   json checks) {
    SuiteReport r;
    r.name = name;
    r.pass = true;
    for (const auto& [key, c] : checks.items()) r.pass = r.pass && c.at("pass").get<bool>();
    r.record = {{"suite", name}, {"pass", r.pass},     {"scale", scale_name(scale)}, {"seed", seed},
                {"params", params}, {"counts", counts}, {"checks", checks}};
    return r;
}

// ---- threshold -------------------------------------------------------------

// Minimizer of the scalar objective over the lattice h*Z, found by bisection on
// the sign of the forward difference (the objective is strictly convex).
double lattice_argmin(double z, const ThresholdParams& tp, double h) {
    const double wa = tp.weight_zero();
    const double wb = tp.weight_anchor();
    const auto f = [&](long long k) {
        const double v = static_cast<double>(k) * h;
        return 0.5 * (v - z) * (v - z) + wa * std::abs(v) + wb * std::abs(v - tp.b);
    };
    long long lo = static_cast<long long>(std::floor((std::min({0.0, tp.b, z}) - 1.0) / h));
    long long hi = static_cast<long long>(std::ceil((std::max({0.0, tp.b, z}) + 1.0) / h));
    while (lo < hi) {
        const long long mid = lo + (hi - lo) / 2;
        if (f(mid + 1) >= f(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return static_cast<double>(lo) * h;
}

}  // namespace

SuiteReport verify_threshold(VerifyScale scale, std::uint64_t seed) {
    const int n_params = pick(scale, 100, 1000);
    const int n_grid = pick(scale, 1000, 10000);
    const double spacing = 1e-6;
    const double tol = 2e-5;
    CounterRng rng(seed);

    double worst_oracle = 0.0;
    long oracle_fail = 0;
    long monotone_fail = 0;
    long symmetry_fail = 0;
    long lasso_fail = 0;
    double worst_shift = 0.0;
    for (int t = 0; t < n_params; ++t) {
        ThresholdParams tp;
        tp.gamma1 = uniform(rng, 0.0, 3.0);
        tp.gamma2 = uniform(rng, -1.0, 1.0) * tp.gamma1;
        tp.b = rng.uniform() < 0.1 ? 0.0 : uniform(rng, -3.0, 3.0);
        const double reach = 2.0 * (std::abs(tp.b) + tp.gamma1) + 1.0;
        ThresholdParams mirrored = tp;
        mirrored.b = -tp.b;
        ThresholdParams lasso = tp;
        lasso.gamma2 = tp.gamma1;
        ThresholdParams anchored = tp;
        anchored.gamma2 = -tp.gamma1;

        double previous = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_grid; ++i) {
            const double z = -reach + 2.0 * reach * i / (n_grid - 1);
            const double v = transfer_threshold(z, tp);
            const double err = std::abs(v - lattice_argmin(z, tp, spacing));
            worst_oracle = std::max(worst_oracle, err);
            if (!(err <= tol)) ++oracle_fail;
            if (v < previous) ++monotone_fail;
            previous = v;
            if (transfer_threshold(-z, mirrored) != -v) ++symmetry_fail;
            if (transfer_threshold(z, lasso) != soft_threshold(z, tp.gamma1)) ++lasso_fail;
            const double shifted = tp.b + soft_threshold(z - tp.b, tp.gamma1);
            worst_shift = std::max(worst_shift, std::abs(transfer_threshold(z, anchored) - shifted));
        }
    }
    const long evaluations = static_cast<long>(n_params) * n_grid;
    json params = {{"param_sets", n_params}, {"grid_points", n_grid}, {"oracle_spacing", spacing}, {"tolerance", tol}};
    json counts = {{"evaluations", evaluations}};
    json checks;
    checks["oracle"] = {{"pass", oracle_fail == 0}, {"failures", oracle_fail}, {"max_abs_error", worst_oracle}};
    checks["monotone"] = {{"pass", monotone_fail == 0}, {"failures", monotone_fail}};
    checks["symmetry"] = {{"pass", symmetry_fail == 0}, {"failures", symmetry_fail}};
    checks["alpha_one_reduction"] = {{"pass", lasso_fail == 0}, {"failures", lasso_fail}};
    checks["alpha_zero_shift"] = {{"pass", worst_shift <= 1e-12}, {"max_abs_error", worst_shift}};
    return finish("threshold", scale, seed, params, counts, checks);
}

namespace {

struct SmallProblem {
    Dataset data;
    Coefficients tilde;
};

SmallProblem small_problem(CounterRng& rng) {
    const int p = uniform_int(rng, 1, 8);
    const int n_lo = std::max(10, p + 2);
    const int n = uniform_int(rng, n_lo, 40);
    Matrix x = gaussian_matrix(n, p, rng);
    Vector beta = Vector::Zero(p);
    Vector tilde = Vector::Zero(p);
    for (Index j = 0; j < p; ++j) {
        if (rng.uniform() < 0.6) beta(j) = uniform(rng, -2.0, 2.0);
        if (rng.uniform() < 0.6) tilde(j) = beta(j) + uniform(rng, -1.0, 1.0);
    }
    Vector y = x * beta + gaussian_vector(n, 0.5, rng);
    return {Dataset(std::move(x), std::move(y)), {tilde, 0.0}};
}

double max_abs_corr(const Matrix& x, const Vector& r) {
    return (x.transpose() * r).cwiseAbs().maxCoeff() / static_cast<double>(x.rows());
}

}  // namespace

SuiteReport verify_kkt(VerifyScale scale, std::uint64_t seed) {
    const int n_oracle = pick(scale, 20, 200);
    const int n_reduction = pick(scale, 10, 100);
    const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    FitConfig cfg;
    cfg.tol = 1e-9;
    const double agree_tol = 1e-6;

    double worst_oracle = 0.0;
    double worst_lasso = 0.0;
    double worst_anchor = 0.0;
    double worst_kkt = 0.0;
    int not_converged = 0;
    const auto track = [&](const FitResult& f) {
        worst_kkt = std::max(worst_kkt, f.kkt_residual);
        if (!f.converged) ++not_converged;
    };

    CounterRng oracle_rng(derive_seed(seed, {1}));
    for (int t = 0; t < n_oracle; ++t) {
        const SmallProblem sp = small_problem(oracle_rng);
        const double alpha = alphas[t % 5];
        const double top = path_top(lambda_max_or_fallback(sp.data, alpha, sp.tilde), sp.data);
        const PenaltySpec pen{2.0 * top * oracle_rng.uniform(), alpha};
        const FitResult fit = cd_fit(sp.data, pen, sp.tilde, cfg);
        track(fit);
        const Coefficients ref = brute_force_fit(sp.data, pen, sp.tilde);
        worst_oracle = std::max(worst_oracle, (fit.coefficients.beta - ref.beta).lpNorm<Eigen::Infinity>());
    }

    CounterRng lasso_rng(derive_seed(seed, {2}));
    for (int t = 0; t < n_reduction; ++t) {
        const SmallProblem sp = small_problem(lasso_rng);
        const double lam = max_abs_corr(sp.data.x(), sp.data.y()) * uniform(lasso_rng, 0.02, 1.0);
        const FitResult fit = cd_fit(sp.data, {lam, 1.0}, sp.tilde, cfg);
        track(fit);
        const Vector ref = lasso_homotopy(sp.data.x(), sp.data.y(), lam);
        worst_lasso = std::max(worst_lasso, (fit.coefficients.beta - ref).lpNorm<Eigen::Infinity>());
    }

    CounterRng anchor_rng(derive_seed(seed, {3}));
    for (int t = 0; t < n_reduction; ++t) {
        const SmallProblem sp = small_problem(anchor_rng);
        const Vector shifted = sp.data.y() - sp.data.x() * sp.tilde.beta;
        const double lam = max_abs_corr(sp.data.x(), shifted) * uniform(anchor_rng, 0.02, 1.0);
        const FitResult fit = cd_fit(sp.data, {lam, 0.0}, sp.tilde, cfg);
        track(fit);
        const Vector ref = sp.tilde.beta + lasso_homotopy(sp.data.x(), shifted, lam);
        worst_anchor = std::max(worst_anchor, (fit.coefficients.beta - ref).lpNorm<Eigen::Infinity>());
    }

    json params = {{"oracle_instances", n_oracle}, {"reduction_instances", n_reduction}, {"solver_tol", cfg.tol},
                   {"agreement_tol", agree_tol}};
    json counts = {{"fits", n_oracle + 2 * n_reduction}, {"not_converged", not_converged}};
    json checks;
    checks["oracle"] = {{"pass", worst_oracle <= agree_tol}, {"max_abs_diff", worst_oracle}};
    checks["alpha_one_lasso"] = {{"pass", worst_lasso <= agree_tol}, {"max_abs_diff", worst_lasso}};
    checks["alpha_zero_shift"] = {{"pass", worst_anchor <= agree_tol}, {"max_abs_diff", worst_anchor}};
    checks["kkt_residual"] = {{"pass", worst_kkt <= 10.0 * cfg.tol && not_converged == 0},
                              {"max_residual", worst_kkt},
                              {"limit", 10.0 * cfg.tol}};
    return finish("kkt", scale, seed, params, counts, checks);
}

namespace {

struct Agreement {
    long both_true = 0;
    long both_false = 0;
    long disagree = 0;

    void add(bool predicted, bool observed) {
        if (predicted != observed) {
            ++disagree;
        } else if (predicted) {
            ++both_true;
        } else {
            ++both_false;
        }
    }
    json to_json() const {
        return {{"both_true", both_true}, {"both_false", both_false}, {"disagree", disagree}};
    }
};

// Random regression problem with a random initial estimate; lambda lands near
// one of the trivial-solution thresholds so both outcomes are common.
struct TrivialInstance {
    Dataset data;
    Coefficients tilde;
    PenaltySpec pen;
};

TrivialInstance trivial_instance(CounterRng& rng) {
    SmallProblem sp = small_problem(rng);
    const double alpha = rng.uniform() < 0.5 ? 0.25 * uniform_int(rng, 0, 4) : rng.uniform();
    const LambdaMax lm = lambda_max_or_fallback(sp.data, alpha, sp.tilde);
    std::vector<double> finite;
    if (std::isfinite(lm.zero_branch)) finite.push_back(lm.zero_branch);
    if (std::isfinite(lm.unchanged_branch)) finite.push_back(lm.unchanged_branch);
    double lam;
    if (finite.empty()) {
        lam = 2.0 * lm.value * rng.uniform();
    } else {
        const double anchor = finite[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(finite.size()) - 1))];
        lam = anchor * std::exp(uniform(rng, -0.5, 0.5));
    }
    return {std::move(sp.data), std::move(sp.tilde), {lam, alpha}};
}

}  // namespace

SuiteReport verify_unchanging(VerifyScale scale, std::uint64_t seed) {
    const int target = pick(scale, 60, 500);
    const int minimality_target = pick(scale, 30, 200);
    FitConfig cfg;
    cfg.tol = 1e-12;
    cfg.max_sweeps = 1'000'000;
    const double trivial_tol = 1e-7;

    Agreement unchanged;
    Agreement zero;
    int included = 0;
    int excluded = 0;
    int attempts = 0;
    CounterRng rng(derive_seed(seed, {1}));
    while (included < target && attempts < 50 * target) {
        ++attempts;
        const TrivialInstance ti = trivial_instance(rng);
        const double mu = unchanged_solution_margin(ti.data, ti.pen, ti.tilde);
        const double mz = zero_solution_margin(ti.data, ti.pen, ti.tilde);
        if (std::abs(mu) < band || std::abs(mz) < band) {
            ++excluded;
            continue;
        }
        ++included;
        const Vector beta = cd_fit(ti.data, ti.pen, ti.tilde, cfg).coefficients.beta;
        unchanged.add(mu >= 0.0, (beta - ti.tilde.beta).lpNorm<Eigen::Infinity>() <= trivial_tol);
        zero.add(mz >= 0.0, beta.lpNorm<Eigen::Infinity>() <= trivial_tol);
    }

    int checked = 0;
    int skipped_infinite = 0;
    long minimality_fail = 0;
    attempts = 0;
    CounterRng lm_rng(derive_seed(seed, {2}));
    while (checked < minimality_target && attempts < 50 * minimality_target) {
        ++attempts;
        const SmallProblem sp = small_problem(lm_rng);
        const double alpha = lm_rng.uniform();
        LambdaMax lm;
        try {
            lm = lambda_max(sp.data, alpha, sp.tilde);
        } catch (const NoFiniteLambdaMax&) {
            ++skipped_infinite;
            continue;
        }
        ++checked;
        const PenaltySpec above{lm.value * (1.0 + 1e-9), alpha};
        const PenaltySpec below{lm.value * (1.0 - 1e-6), alpha};
        const bool certified = lm.certifying == TrivialSolution::zero ? zero_solution_exists(sp.data, above, sp.tilde)
                                                                      : unchanged_solution_exists(sp.data, above, sp.tilde);
        const bool any_below =
            zero_solution_exists(sp.data, below, sp.tilde) || unchanged_solution_exists(sp.data, below, sp.tilde);
        if (!certified || any_below) ++minimality_fail;
    }

    json params = {{"instances", target},          {"boundary_band", band}, {"solver_tol", cfg.tol},
                   {"trivial_tol", trivial_tol},  {"minimality_instances", minimality_target}};
    json counts = {{"included", included},
                   {"excluded_band", excluded},
                   {"unchanged", unchanged.to_json()},
                   {"zero", zero.to_json()},
                   {"minimality_checked", checked},
                   {"minimality_skipped_infinite", skipped_infinite}};
    json checks;
    const bool directions = unchanged.both_true > 0 && unchanged.both_false > 0 && zero.both_true > 0 && zero.both_false > 0;
    checks["iff"] = {{"pass", included == target && unchanged.disagree == 0 && zero.disagree == 0 && directions},
                     {"agreement", included > 0 ? 1.0 - static_cast<double>(unchanged.disagree + zero.disagree) /
                                                            (2.0 * included)
                                                : 0.0}};
    checks["lambda_max_minimality"] = {{"pass", checked == minimality_target && minimality_fail == 0},
                                       {"failures", minimality_fail}};
    return finish("unchanging", scale, seed, params, counts, checks);
}

namespace {

struct SignInstance {
    SignCase sc;
    TheoryCase tc;
    PenaltySpec pen;
};

// Half the draws sit in the regime of the sufficient conditions (small
// perturbation and noise, large coefficients); the rest are unrestricted.
SignInstance sign_instance(CounterRng& rng, bool unchanging) {
    const Index n = 40;
    const Index p = 10;
    const int s = uniform_int(rng, 1, 4);
    std::vector<Index> block;
    for (auto j : sample_indices(p, s, rng)) block.push_back(j);
    std::sort(block.begin(), block.end());
    const double coherence = 0.6 * rng.uniform();
    Matrix x = orthogonal_block_design(n, p, block, coherence, rng);
    const double alpha = rng.uniform();
    const double lam = uniform(rng, 0.05, 1.0);
    const bool targeted = rng.uniform() < 0.5;
    const double sigma = targeted ? 0.2 * rng.uniform() : 0.5 * rng.uniform();

    Vector beta = Vector::Zero(p);
    Vector tilde = Vector::Zero(p);
    const auto random_sign = [&] { return rng.uniform() < 0.5 ? -1.0 : 1.0; };
    const auto perturbation = [&] { return targeted ? 0.5 * lam * uniform(rng, -1.0, 1.0) : uniform(rng, -0.8, 0.8); };
    if (!unchanging) {
        const double m = std::max(1.5 - 2.0 * alpha, 2.0 * alpha - 0.5);
        for (Index j : block) {
            beta(j) = random_sign() * (targeted ? lam * m * uniform(rng, 1.0, 3.0) : uniform(rng, 0.05, 1.55));
            tilde(j) = !targeted && rng.uniform() < 0.2 ? 0.0 : beta(j) + perturbation();
        }
        if (!targeted && rng.uniform() < 0.5) {
            for (Index j = 0; j < p; ++j) {
                if (beta(j) == 0.0 && rng.uniform() < 0.25) tilde(j) = uniform(rng, -0.5, 0.5);
            }
        }
    } else {
        for (Index j : block) {
            tilde(j) = random_sign() * (targeted ? 2.0 * lam * alpha * uniform(rng, 1.0, 3.0) + 0.01
                                                 : uniform(rng, 0.05, 1.55));
            beta(j) = !targeted && rng.uniform() < 0.2 ? 0.0 : tilde(j) - perturbation();
        }
        if (!targeted && rng.uniform() < 0.5) {
            for (Index j = 0; j < p; ++j) {
                if (tilde(j) == 0.0 && rng.uniform() < 0.25) beta(j) = uniform(rng, -0.3, 0.3);
            }
        }
    }
    SignInstance si;
    si.sc.x = std::move(x);
    si.sc.epsilon = gaussian_vector(n, sigma, rng);
    si.tc = TheoryCase::make(beta, tilde, sigma);
    si.pen = {lam, alpha};
    return si;
}

struct SufficiencyCount {
    long triggered = 0;
    long violations = 0;

    json to_json() const {
        return {{"pass", violations == 0}, {"triggered", triggered}, {"violations", violations}};
    }
};

}  // namespace

SuiteReport verify_signs(VerifyScale scale, std::uint64_t seed) {
    const int target = pick(scale, 40, 200);
    FitConfig cfg;
    cfg.tol = 1e-12;
    cfg.max_sweeps = 1'000'000;

    json counts;
    json checks;
    for (const bool unchanging : {false, true}) {
        const std::string name = unchanging ? "unchanging" : "recovery";
        Agreement agree;
        SufficiencyCount published;
        SufficiencyCount corrected;
        int included = 0;
        int excluded = 0;
        int attempts = 0;
        CounterRng rng(derive_seed(seed, {unchanging ? 2u : 1u}));
        while (included < target && attempts < 50 * target) {
            ++attempts;
            const SignInstance si = sign_instance(rng, unchanging);
            const SignEvaluation ev = unchanging ? sign_unchanging_exact(si.sc, si.pen, si.tc)
                                                 : sign_recovery_exact(si.sc, si.pen, si.tc);
            for (const auto form : {SufficientForm::published, SufficientForm::corrected}) {
                const bool suff = unchanging ? sign_unchanging_sufficient(si.sc, si.pen, si.tc, form)
                                             : sign_recovery_sufficient(si.sc, si.pen, si.tc, form);
                auto& tally = form == SufficientForm::published ? published : corrected;
                if (suff) {
                    ++tally.triggered;
                    if (!ev.holds) ++tally.violations;
                }
            }
            if (std::abs(ev.margin()) < band) {
                ++excluded;
                continue;
            }
            ++included;
            const Vector beta = cd_fit(si.sc.dataset(si.tc), si.pen, {si.tc.tilde, 0.0}, cfg).coefficients.beta;
            agree.add(ev.holds, same_signs(beta, unchanging ? si.tc.tilde : si.tc.beta_star));
        }
        counts[name] = {{"included", included}, {"excluded_band", excluded}, {"sampled", attempts},
                        {"agreement", agree.to_json()}};
        checks[name + "_iff"] = {{"pass", included == target && agree.disagree == 0 && agree.both_true > 0 &&
                                              agree.both_false > 0},
                                 {"disagree", agree.disagree}};
        checks[name + "_sufficient_published"] = published.to_json();
        checks[name + "_sufficient_corrected"] = corrected.to_json();
    }
    json params = {{"instances", target}, {"n", 40}, {"p", 10}, {"boundary_band", band}, {"solver_tol", cfg.tol}};
    return finish("signs", scale, seed, params, counts, checks);
}

SuiteReport verify_bounds(VerifyScale scale, std::uint64_t seed) {
    const int trials = pick(scale, 100, 1000);
    const int n = 200;
    const int p = 20;
    const int s = 5;
    const double sigma = 1.0;
    const double c = 0.5;

    json counts;
    json checks;
    for (const double alpha : {0.5, 1.0}) {
        const auto r = bound_violation_experiment(n, p, s, sigma, alpha, c, trials, seed);
        const double limit = std::max(std::min(r.nu, 1.0), 0.01);
        const std::string key = alpha == 1.0 ? "violation_alpha_1" : "violation_alpha_0.5";
        counts[key] = {{"violations", r.violations}, {"trials", r.trials}, {"lambda_n", r.lambda_n}, {"nu", r.nu}};
        checks[key] = {{"pass", r.violation_rate <= limit}, {"rate", r.violation_rate}, {"limit", limit}};
    }

    // Ratio behaviour as lambda shrinks, on a fixed set of formula inputs.
    const double phi = 0.8;
    const double s_ratio = 5.0;
    bool quadratic_ok = true;
    bool linear_ok = true;
    double worst_quadratic = 0.0;
    double worst_linear = 0.0;
    for (const double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        BoundInputs b;
        b.alpha = alpha;
        b.c = c;
        b.s = s_ratio;
        b.phi = phi;
        const double cap = 4.0 * (alpha + c) * (alpha + c) * s_ratio / (phi * phi) * (1.0 + 1e-9);
        std::vector<double> linear;
        for (int e = 1; e <= 6; ++e) {
            b.lambda_n = std::pow(10.0, -e);
            b.delta_l1 = 0.0;
            const double q = error_bound(b) / (b.lambda_n * b.lambda_n);
            quadratic_ok = quadratic_ok && q <= cap;
            worst_quadratic = std::max(worst_quadratic, q / cap);
            b.delta_l1 = 1.0;
            linear.push_back(error_bound(b) / b.lambda_n);
        }
        // Aitken extrapolation of the last three ratios estimates the limit.
        const double r4 = linear[3], r5 = linear[4], r6 = linear[5];
        const double denom = (r6 - r5) - (r5 - r4);
        const double limit = denom != 0.0 ? r6 - (r6 - r5) * (r6 - r5) / denom : r6;
        const double linear_cap = 8.0 * (1.0 - alpha) / phi * 1.01;
        linear_ok = linear_ok && limit <= linear_cap + 1e-9 && r6 <= r5;
        worst_linear = std::max(worst_linear, limit - linear_cap);
    }
    checks["ratio_quadratic"] = {{"pass", quadratic_ok}, {"max_ratio_to_cap", worst_quadratic}};
    checks["ratio_linear"] = {{"pass", linear_ok}, {"max_limit_minus_cap", worst_linear}};

    // With Delta = 0 the bound grows with alpha: the anchored penalty tightens it.
    bool monotone = true;
    BoundInputs m;
    m.c = c;
    m.lambda_n = 0.1;
    m.s = s_ratio;
    m.phi = phi;
    double previous = 0.0;
    for (int i = 0; i <= 100; ++i) {
        m.alpha = i / 100.0;
        const double v = error_bound(m);
        monotone = monotone && v >= previous;
        previous = v;
    }
    checks["alpha_monotone"] = {{"pass", monotone}};

    json params = {{"n", n}, {"p", p}, {"s", s}, {"sigma", sigma}, {"c", c}, {"trials", trials}, {"phi_formula", phi}};
    return finish("bounds", scale, seed, params, counts, checks);
}

std::vector<std::string> suite_names() { return {"threshold", "kkt", "unchanging", "signs", "bounds"}; }

std::vector<SuiteReport> run_suites(const std::string& name, VerifyScale scale) {
    std::vector<SuiteReport> out;
    const auto wanted = [&](const char* s) { return name == "all" || name == s; };
    const auto names = suite_names();
    if (name != "all" && std::find(names.begin(), names.end(), name) == names.end()) {
        throw InvalidSpec("unknown suite '" + name + "'");
    }
    if (wanted("threshold")) out.push_back(verify_threshold(scale));
    if (wanted("kkt")) out.push_back(verify_kkt(scale));
    if (wanted("unchanging")) out.push_back(verify_unchanging(scale));
    if (wanted("signs")) out.push_back(verify_signs(scale));
    if (wanted("bounds")) out.push_back(verify_bounds(scale));
    return out;
}

}  // namespace tlasso
