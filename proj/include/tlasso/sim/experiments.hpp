#pragma once

#include "tlasso/model_select.hpp"
#include "tlasso/sim/generators.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace tlasso {

enum class Method { lasso_all, lasso_single, transfer_lasso };

std::string method_name(Method m);
Method parse_method(const std::string& name);  ///< throws InvalidSpec

struct ExperimentConfig {
    int trials = 30;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::lasso_all, Method::lasso_single, Method::transfer_lasso};
    CvSpec cv;
    FitConfig fit;

    ExperimentConfig();
    void validate() const;
    nlohmann::json to_json() const;
};

/// One metric over methods x positions (steps or rates), with every trial kept.
struct ExperimentReport {
    std::string metric;
    std::string position_name;  ///< "step" or "rate"
    std::vector<std::string> methods;
    std::vector<double> positions;
    /// values[m][k][t]: method m, position k, trial t
    std::vector<std::vector<std::vector<double>>> values;
    nlohmann::json config;

    double mean(std::size_t method, std::size_t position) const;
    /// Sample sd over trials divided by sqrt(trials); 0 for a single trial.
    double stderr_of(std::size_t method, std::size_t position) const;
    std::size_t method_index(const std::string& name) const;  ///< throws InvalidSpec

    /// Columns: method, step_or_rate, mean, stderr, trials.
    std::string to_csv() const;
    nlohmann::json to_json() const;
    void write_csv(const std::filesystem::path& path) const;
    void write_json(const std::filesystem::path& path) const;
};

/// Per trial and step: lasso_all on steps 1..k concatenated, lasso_single on step k,
/// transfer_lasso on step k anchored at its own previous estimate (plain Lasso at
/// step 1). Hyperparameters by cross-validation; metric is the raw-scale l2 error.
ExperimentReport run_concept_drift(const DriftScenario& scenario, const ExperimentConfig& cfg);

struct TransferReports {
    ExperimentReport l2_error;
    ExperimentReport correct_selected;
};

/// Per rate: Lasso on the source gives the anchor; the target is fit by each method
/// (lasso_all concatenates source and target).
TransferReports run_transfer(const DriftScenario& scenario, const std::vector<double>& rates,
                             const ExperimentConfig& cfg);

/// Prequential: fit on batch k, AUC on batch k+1. Alphas equal to 1/2 become 0.501.
ExperimentReport run_classification_drift(const DriftScenario& scenario, const ExperimentConfig& cfg);

}  // namespace tlasso
