#pragma once

#include "tlasso/core/dataset.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tlasso {

enum class DriftKind { abrupt, gradual, transfer, classification_drift };

std::string drift_kind_name(DriftKind k);
DriftKind parse_drift_kind(const std::string& name);  ///< throws InvalidSpec

struct DriftScenario {
    DriftKind kind = DriftKind::abrupt;
    int n_per_step = 50;
    int p = 100;
    int n_steps = 10;
    int s_active = 10;
    double coef_lo = -1.0;
    double coef_hi = 1.0;
    int switch_count = 5;
    int switch_step = 6;  ///< 1-based step at which the abrupt switch happens
    double transfer_rate = 0.0;
    int n_source = 500;  ///< transfer: source sample size (target uses n_per_step)
    double noise_sigma = 1.0;
    // classification: p = n_topics * block_size, interest spans `interest_width` topics
    int n_topics = 20;
    int block_size = 5;
    int interest_width = 10;
    double on_topic_rate = 0.5;
    double off_topic_rate = 0.05;
    double class_weight = 1.0;

    void validate() const;

    /// Desk-scale defaults per kind (abrupt/gradual: 50 x 100, 10 steps;
    /// transfer: 500 source / 50 target; classification: 20 batches of 100).
    static DriftScenario defaults(DriftKind kind);
};

struct StepData {
    Dataset dataset;
    Coefficients beta_true;
};

/// Steps 1..switch_step-1 share beta; at switch_step, switch_count support indices
/// move to fresh inactive indices with redrawn coefficients. Fresh X, eps each step.
std::vector<StepData> gen_abrupt(const DriftScenario& spec, std::uint64_t seed);

/// Between consecutive steps one support index leaves and one inactive index
/// enters with a redrawn coefficient.
std::vector<StepData> gen_gradual(const DriftScenario& spec, std::uint64_t seed);

/// (source, target): every source support index independently moves to an unused
/// inactive index with probability transfer_rate, keeping its coefficient.
std::pair<StepData, StepData> gen_transfer(const DriftScenario& spec, std::uint64_t seed);

/// Boolean bag-of-topics features and logistic labels. Each example draws one
/// topic; its block fires at on_topic_rate, all other features at off_topic_rate.
/// Batches 2k-1 and 2k share an interest window of topics k..k+width-1; the
/// window's blocks carry +class_weight and the rest -class_weight.
std::vector<StepData> gen_classification_drift(const DriftScenario& spec, std::uint64_t seed);

}  // namespace tlasso
