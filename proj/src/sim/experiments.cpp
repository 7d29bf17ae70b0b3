#include "tlasso/sim/experiments.hpp"

#include "tlasso/error.hpp"
#include "tlasso/sim/metrics.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/util/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace tlasso {
namespace {

// Seed tags per fitting role; the transfer chain reuses the plain-Lasso tag at
// its first step so both methods see the same folds there.
constexpr std::uint64_t role_all = 1;
constexpr std::uint64_t role_lasso = 2;
constexpr std::uint64_t role_transfer = 3;
constexpr std::uint64_t role_source = 4;

bool wants(const ExperimentConfig& cfg, Method m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

// Standardize, cross-validate on the standardized scale, return raw-scale coefficients.
Coefficients select_and_fit(const Dataset& raw, const Coefficients* tilde_raw, const std::vector<double>& alphas,
                            const ExperimentConfig& cfg, std::uint64_t cv_seed, Loss loss) {
    StandardizeOptions opts;
    opts.center_response = loss == Loss::squared;
    opts.constant_columns = ConstantColumnPolicy::keep_unscaled;
    const auto [std_data, scaler] = standardize(raw, opts);
    const Coefficients tilde = tilde_raw ? to_standardized_scale(*tilde_raw, scaler) : Coefficients::zeros(raw.p());

    CvSpec cv = cfg.cv;
    cv.alphas = alphas;
    cv.seed = cv_seed;
    if (loss == Loss::logistic && cv.metric == CvMetric::mse) cv.metric = CvMetric::deviance;
    FitConfig fit = cfg.fit;
    fit.loss = loss;
    fit.zero_columns = ZeroColumnPolicy::penalty_minimizer;
    fit.fit_intercept = loss == Loss::logistic;
    fit.warm.reset();
    fit.on_sweep = nullptr;
    const CvResult result = cross_validate(std_data, cv, tilde, fit);
    return destandardize(result.refit.coefficients, scaler);
}

Dataset concat_prefix(const std::vector<StepData>& steps, std::size_t last) {
    std::vector<const Dataset*> parts;
    for (std::size_t k = 0; k <= last; ++k) parts.push_back(&steps[k].dataset);
    return concatenate(parts);
}

ExperimentReport empty_report(const std::string& metric, const std::string& position_name,
                              const ExperimentConfig& cfg, std::size_t positions, const nlohmann::json& scenario) {
    ExperimentReport r;
    r.metric = metric;
    r.position_name = position_name;
    for (Method m : cfg.methods) r.methods.push_back(method_name(m));
    r.values.assign(cfg.methods.size(),
                    std::vector<std::vector<double>>(positions, std::vector<double>(static_cast<std::size_t>(cfg.trials))));
    r.config = cfg.to_json();
    r.config["scenario"] = scenario;
    r.config["lasso_all_standardization"] = "concatenated data standardized as one dataset";
    return r;
}

nlohmann::json scenario_json(const DriftScenario& s) {
    nlohmann::json j;
    j["kind"] = drift_kind_name(s.kind);
    j["n_per_step"] = s.n_per_step;
    j["p"] = s.p;
    j["n_steps"] = s.n_steps;
    j["s_active"] = s.s_active;
    j["coef_range"] = {s.coef_lo, s.coef_hi};
    j["switch_count"] = s.switch_count;
    j["switch_step"] = s.switch_step;
    j["transfer_rate"] = s.transfer_rate;
    j["n_source"] = s.n_source;
    j["noise_sigma"] = s.noise_sigma;
    if (s.kind == DriftKind::classification_drift) {
        j["n_topics"] = s.n_topics;
        j["block_size"] = s.block_size;
        j["interest_width"] = s.interest_width;
        j["on_topic_rate"] = s.on_topic_rate;
        j["off_topic_rate"] = s.off_topic_rate;
        j["class_weight"] = s.class_weight;
    }
    return j;
}

std::size_t slot(const ExperimentConfig& cfg, Method m) {
    return static_cast<std::size_t>(std::find(cfg.methods.begin(), cfg.methods.end(), m) - cfg.methods.begin());
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::lasso_all:
            return "lasso_all";
        case Method::lasso_single:
            return "lasso_single";
        case Method::transfer_lasso:
            return "transfer_lasso";
    }
    return "unknown";
}

Method parse_method(const std::string& name) {
    if (name == "lasso_all") return Method::lasso_all;
    if (name == "lasso_single") return Method::lasso_single;
    if (name == "transfer_lasso") return Method::transfer_lasso;
    throw InvalidSpec("unknown method '" + name + "'");
}

ExperimentConfig::ExperimentConfig() {
    fit.tol = 1e-4;
    fit.zero_columns = ZeroColumnPolicy::penalty_minimizer;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw InvalidSpec("trials must be >= 1");
    if (methods.empty()) throw InvalidSpec("at least one method is required");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            if (methods[i] == methods[j]) throw InvalidSpec("methods must be distinct");
        }
    }
    if (cv.alphas.empty()) throw InvalidSpec("alphas must be nonempty");
    fit.validate();
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["trials"] = trials;
    j["seed"] = seed;
    j["methods"] = nlohmann::json::array();
    for (Method m : methods) j["methods"].push_back(method_name(m));
    j["cv"] = {{"k", cv.k},
               {"alphas", cv.alphas},
               {"n_lambda", cv.n_lambda},
               {"ratio", cv.ratio},
               {"metric", cv.metric == CvMetric::mse ? "mse" : (cv.metric == CvMetric::deviance ? "deviance" : "auc")}};
    j["fit"] = {{"tol", fit.tol}, {"max_sweeps", fit.max_sweeps}};
    return j;
}

ExperimentReport run_concept_drift(const DriftScenario& scenario, const ExperimentConfig& cfg) {
    cfg.validate();
    scenario.validate();
    if (scenario.kind != DriftKind::abrupt && scenario.kind != DriftKind::gradual) {
        throw InvalidSpec("concept drift runs need an abrupt or gradual scenario");
    }
    const auto n_steps = static_cast<std::size_t>(scenario.n_steps);
    ExperimentReport report = empty_report("l2_error", "step", cfg, n_steps, scenario_json(scenario));
    for (std::size_t k = 0; k < n_steps; ++k) report.positions.push_back(static_cast<double>(k + 1));
    const std::vector<double> lasso_alpha{1.0};

    parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t t) {
        const std::uint64_t trial_seed = derive_seed(cfg.seed, {t});
        const auto steps = scenario.kind == DriftKind::abrupt ? gen_abrupt(scenario, trial_seed)
                                                              : gen_gradual(scenario, trial_seed);
        Coefficients previous;
        for (std::size_t k = 0; k < n_steps; ++k) {
            const Vector& truth = steps[k].beta_true.beta;
            const auto seed_for = [&](std::uint64_t role) { return derive_seed(cfg.seed, {t, k, role}); };
            if (wants(cfg, Method::lasso_all)) {
                const Coefficients c =
                    select_and_fit(concat_prefix(steps, k), nullptr, lasso_alpha, cfg, seed_for(role_all), Loss::squared);
                report.values[slot(cfg, Method::lasso_all)][k][t] = l2_error(c.beta, truth);
            }
            const bool need_lasso = wants(cfg, Method::lasso_single) || (wants(cfg, Method::transfer_lasso) && k == 0);
            Coefficients lasso;
            if (need_lasso) {
                lasso = select_and_fit(steps[k].dataset, nullptr, lasso_alpha, cfg, seed_for(role_lasso), Loss::squared);
                if (wants(cfg, Method::lasso_single)) {
                    report.values[slot(cfg, Method::lasso_single)][k][t] = l2_error(lasso.beta, truth);
                }
            }
            if (wants(cfg, Method::transfer_lasso)) {
                previous = k == 0 ? lasso
                                  : select_and_fit(steps[k].dataset, &previous, cfg.cv.alphas, cfg,
                                                   seed_for(role_transfer), Loss::squared);
                report.values[slot(cfg, Method::transfer_lasso)][k][t] = l2_error(previous.beta, truth);
            }
        }
    });
    return report;
}

TransferReports run_transfer(const DriftScenario& scenario, const std::vector<double>& rates,
                             const ExperimentConfig& cfg) {
    cfg.validate();
    if (scenario.kind != DriftKind::transfer) throw InvalidSpec("transfer runs need a transfer scenario");
    if (rates.empty()) throw InvalidSpec("rates must be nonempty");
    for (double r : rates) {
        if (!(r >= 0.0 && r <= 1.0)) throw InvalidSpec("rates must lie in [0, 1]");
    }
    const nlohmann::json echo = scenario_json(scenario);
    TransferReports out{empty_report("l2_error", "rate", cfg, rates.size(), echo),
                        empty_report("correct_selected", "rate", cfg, rates.size(), echo)};
    out.l2_error.positions = rates;
    out.correct_selected.positions = rates;
    const std::vector<double> lasso_alpha{1.0};

    const std::size_t units = rates.size() * static_cast<std::size_t>(cfg.trials);
    parallel_for(units, [&](std::size_t unit) {
        const std::size_t r = unit / static_cast<std::size_t>(cfg.trials);
        const std::size_t t = unit % static_cast<std::size_t>(cfg.trials);
        DriftScenario sc = scenario;
        sc.transfer_rate = rates[r];
        // Same trial seed across rates: designs and the source model are shared.
        const auto [source, target] = gen_transfer(sc, derive_seed(cfg.seed, {t}));
        const auto seed_for = [&](std::uint64_t role) { return derive_seed(cfg.seed, {t, r, role}); };
        const Vector& truth = target.beta_true.beta;
        const auto record = [&](Method m, const Coefficients& c) {
            out.l2_error.values[slot(cfg, m)][r][t] = l2_error(c.beta, truth);
            out.correct_selected.values[slot(cfg, m)][r][t] = correct_selected(c.beta, truth);
        };
        if (wants(cfg, Method::lasso_all)) {
            const Dataset both = concatenate({&source.dataset, &target.dataset});
            record(Method::lasso_all, select_and_fit(both, nullptr, lasso_alpha, cfg, seed_for(role_all), Loss::squared));
        }
        if (wants(cfg, Method::lasso_single)) {
            record(Method::lasso_single,
                   select_and_fit(target.dataset, nullptr, lasso_alpha, cfg, seed_for(role_lasso), Loss::squared));
        }
        if (wants(cfg, Method::transfer_lasso)) {
            const Coefficients anchor =
                select_and_fit(source.dataset, nullptr, lasso_alpha, cfg, seed_for(role_source), Loss::squared);
            record(Method::transfer_lasso, select_and_fit(target.dataset, &anchor, cfg.cv.alphas, cfg,
                                                          seed_for(role_transfer), Loss::squared));
        }
    });
    return out;
}

ExperimentReport run_classification_drift(const DriftScenario& scenario, const ExperimentConfig& cfg) {
    cfg.validate();
    if (scenario.kind != DriftKind::classification_drift) {
        throw InvalidSpec("classification runs need a classification scenario");
    }
    if (scenario.n_steps < 2) throw InvalidSpec("prequential evaluation needs at least two batches");
    const auto n_eval = static_cast<std::size_t>(scenario.n_steps - 1);
    ExperimentReport report = empty_report("auc", "step", cfg, n_eval, scenario_json(scenario));
    for (std::size_t k = 0; k < n_eval; ++k) report.positions.push_back(static_cast<double>(k + 1));

    // alpha = 1/2 is numerically fragile with boolean features.
    std::vector<double> alphas = cfg.cv.alphas;
    for (double& a : alphas) {
        if (a == 0.5) a = 0.501;
    }
    report.config["effective_alphas"] = alphas;
    const std::vector<double> lasso_alpha{1.0};

    parallel_for(static_cast<std::size_t>(cfg.trials), [&](std::size_t t) {
        const auto batches = gen_classification_drift(scenario, derive_seed(cfg.seed, {t}));
        Coefficients previous;
        for (std::size_t k = 0; k < n_eval; ++k) {
            const Dataset& test = batches[k + 1].dataset;
            const auto seed_for = [&](std::uint64_t role) { return derive_seed(cfg.seed, {t, k, role}); };
            const auto score = [&](const Coefficients& c) {
                Vector eta = test.x() * c.beta;
                eta.array() += c.intercept;
                try {
                    return auc(eta, test.y());
                } catch (const DegenerateLabels&) {
                    return std::nan("");
                }
            };
            if (wants(cfg, Method::lasso_all)) {
                const Coefficients c =
                    select_and_fit(concat_prefix(batches, k), nullptr, lasso_alpha, cfg, seed_for(role_all), Loss::logistic);
                report.values[slot(cfg, Method::lasso_all)][k][t] = score(c);
            }
            const bool need_lasso = wants(cfg, Method::lasso_single) || (wants(cfg, Method::transfer_lasso) && k == 0);
            Coefficients lasso;
            if (need_lasso) {
                lasso = select_and_fit(batches[k].dataset, nullptr, lasso_alpha, cfg, seed_for(role_lasso), Loss::logistic);
                if (wants(cfg, Method::lasso_single)) report.values[slot(cfg, Method::lasso_single)][k][t] = score(lasso);
            }
            if (wants(cfg, Method::transfer_lasso)) {
                previous = k == 0 ? lasso
                                  : select_and_fit(batches[k].dataset, &previous, alphas, cfg, seed_for(role_transfer),
                                                   Loss::logistic);
                report.values[slot(cfg, Method::transfer_lasso)][k][t] = score(previous);
            }
        }
    });
    return report;
}

}  // namespace tlasso
