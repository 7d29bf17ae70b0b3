#include "tlasso/sim/generators.hpp"

#include "tlasso/error.hpp"
#include "tlasso/sim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace tlasso {
namespace {

// Stream tags keep coefficient draws and per-step data draws independent.
constexpr std::uint64_t tag_beta = 0x62657461ULL;
constexpr std::uint64_t tag_step = 0x73746570ULL;
constexpr std::uint64_t tag_source = 0x737263ULL;
constexpr std::uint64_t tag_target = 0x746774ULL;

double draw_coef(const DriftScenario& spec, CounterRng& rng) {
    return spec.coef_lo + (spec.coef_hi - spec.coef_lo) * rng.uniform();
}

Vector initial_beta(const DriftScenario& spec, CounterRng& rng) {
    Vector beta = Vector::Zero(spec.p);
    for (Index j : sample_indices(spec.p, spec.s_active, rng)) beta(j) = draw_coef(spec, rng);
    return beta;
}

std::vector<Index> support_of(const Vector& beta) {
    std::vector<Index> out;
    for (Index j = 0; j < beta.size(); ++j) {
        if (beta(j) != 0.0) out.push_back(j);
    }
    return out;
}

std::vector<Index> inactive_of(const Vector& beta) {
    std::vector<Index> out;
    for (Index j = 0; j < beta.size(); ++j) {
        if (beta(j) == 0.0) out.push_back(j);
    }
    return out;
}

// Gaussian design and noise for one step.
StepData gaussian_step(const Vector& beta, int n, double sigma, std::uint64_t seed) {
    CounterRng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto p = beta.size();
    Matrix x(n, p);
    for (Index j = 0; j < p; ++j) {
        for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
    }
    Vector y = x * beta;
    for (Index i = 0; i < n; ++i) y(i) += sigma * normal(rng);
    return {Dataset(std::move(x), std::move(y)), {beta, 0.0}};
}

std::vector<StepData> realize(const DriftScenario& spec, const std::vector<Vector>& betas, std::uint64_t seed) {
    std::vector<StepData> out;
    out.reserve(betas.size());
    for (std::size_t k = 0; k < betas.size(); ++k) {
        out.push_back(gaussian_step(betas[k], spec.n_per_step, spec.noise_sigma, derive_seed(seed, {tag_step, k})));
    }
    return out;
}

}  // namespace

std::string drift_kind_name(DriftKind k) {
    switch (k) {
        case DriftKind::abrupt:
            return "abrupt";
        case DriftKind::gradual:
            return "gradual";
        case DriftKind::transfer:
            return "transfer";
        case DriftKind::classification_drift:
            return "classification";
    }
    return "unknown";
}

DriftKind parse_drift_kind(const std::string& name) {
    if (name == "abrupt") return DriftKind::abrupt;
    if (name == "gradual") return DriftKind::gradual;
    if (name == "transfer") return DriftKind::transfer;
    if (name == "classification" || name == "classification_drift") return DriftKind::classification_drift;
    throw InvalidSpec("unknown scenario '" + name + "'");
}

void DriftScenario::validate() const {
    if (n_per_step < 2 || n_steps < 1) throw InvalidSpec("need n_per_step >= 2 and n_steps >= 1");
    if (!(coef_lo <= coef_hi)) throw InvalidSpec("coef_lo must not exceed coef_hi");
    if (!(noise_sigma >= 0.0)) throw InvalidSpec("noise_sigma must be >= 0");
    if (kind == DriftKind::classification_drift) {
        if (n_topics < 1 || block_size < 1 || interest_width < 1) throw InvalidSpec("topic layout must be positive");
        if (p != n_topics * block_size) throw InvalidSpec("classification needs p = n_topics * block_size");
        const int macro_steps = (n_steps + 1) / 2;
        if (macro_steps + interest_width - 1 > n_topics) throw InvalidSpec("interest window runs past the last topic");
        if (!(on_topic_rate >= 0.0 && on_topic_rate <= 1.0 && off_topic_rate >= 0.0 && off_topic_rate <= 1.0)) {
            throw InvalidSpec("feature rates must lie in [0, 1]");
        }
        return;
    }
    if (p < 1 || s_active < 1 || s_active > p) throw InvalidSpec("need 1 <= s_active <= p");
    if (switch_count < 0 || switch_count > s_active) throw InvalidSpec("need 0 <= switch_count <= s_active");
    if (kind == DriftKind::abrupt) {
        if (switch_count > p - s_active) throw InvalidSpec("not enough inactive features to switch into");
        if (switch_step < 1) throw InvalidSpec("switch_step must be >= 1");
    }
    if (kind == DriftKind::gradual && n_steps > 1 && s_active == p) throw InvalidSpec("gradual drift needs an inactive feature");
    if (kind == DriftKind::transfer) {
        if (!(transfer_rate >= 0.0 && transfer_rate <= 1.0)) throw InvalidSpec("transfer_rate must lie in [0, 1]");
        if (n_source < 2) throw InvalidSpec("n_source must be >= 2");
    }
}

DriftScenario DriftScenario::defaults(DriftKind kind) {
    DriftScenario s;
    s.kind = kind;
    if (kind == DriftKind::transfer) {
        s.n_steps = 1;
    } else if (kind == DriftKind::classification_drift) {
        s.n_per_step = 100;
        s.n_steps = 20;
        s.p = s.n_topics * s.block_size;
    }
    return s;
}

std::vector<StepData> gen_abrupt(const DriftScenario& spec, std::uint64_t seed) {
    spec.validate();
    CounterRng rng(derive_seed(seed, {tag_beta}));
    std::vector<Vector> betas;
    Vector beta = initial_beta(spec, rng);
    for (int k = 1; k <= spec.n_steps; ++k) {
        if (k == spec.switch_step) {
            const auto support = support_of(beta);
            const auto inactive = inactive_of(beta);
            const auto leaving = sample_indices(static_cast<Index>(support.size()), spec.switch_count, rng);
            const auto entering = sample_indices(static_cast<Index>(inactive.size()), spec.switch_count, rng);
            for (int i = 0; i < spec.switch_count; ++i) {
                beta(support[static_cast<std::size_t>(leaving[static_cast<std::size_t>(i)])]) = 0.0;
            }
            for (int i = 0; i < spec.switch_count; ++i) {
                beta(inactive[static_cast<std::size_t>(entering[static_cast<std::size_t>(i)])]) = draw_coef(spec, rng);
            }
        }
        betas.push_back(beta);
    }
    return realize(spec, betas, seed);
}

std::vector<StepData> gen_gradual(const DriftScenario& spec, std::uint64_t seed) {
    spec.validate();
    CounterRng rng(derive_seed(seed, {tag_beta}));
    std::vector<Vector> betas;
    Vector beta = initial_beta(spec, rng);
    betas.push_back(beta);
    for (int k = 2; k <= spec.n_steps; ++k) {
        const auto support = support_of(beta);
        const auto inactive = inactive_of(beta);
        const Index out = support[static_cast<std::size_t>(sample_indices(static_cast<Index>(support.size()), 1, rng)[0])];
        const Index in = inactive[static_cast<std::size_t>(sample_indices(static_cast<Index>(inactive.size()), 1, rng)[0])];
        beta(out) = 0.0;
        beta(in) = draw_coef(spec, rng);
        betas.push_back(beta);
    }
    return realize(spec, betas, seed);
}

std::pair<StepData, StepData> gen_transfer(const DriftScenario& spec, std::uint64_t seed) {
    spec.validate();
    CounterRng rng(derive_seed(seed, {tag_beta}));
    const Vector source_beta = initial_beta(spec, rng);
    Vector target_beta = source_beta;
    std::vector<Index> pool = inactive_of(source_beta);
    for (Index j : support_of(source_beta)) {
        if (!(rng.uniform() < spec.transfer_rate) || pool.empty()) continue;
        const auto pick = static_cast<std::size_t>(sample_indices(static_cast<Index>(pool.size()), 1, rng)[0]);
        const Index dest = pool[pick];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
        target_beta(dest) = source_beta(j);
        target_beta(j) = 0.0;
    }
    StepData source = gaussian_step(source_beta, spec.n_source, spec.noise_sigma, derive_seed(seed, {tag_source}));
    StepData target = gaussian_step(target_beta, spec.n_per_step, spec.noise_sigma, derive_seed(seed, {tag_target}));
    return {std::move(source), std::move(target)};
}

std::vector<StepData> gen_classification_drift(const DriftScenario& spec, std::uint64_t seed) {
    spec.validate();
    const int p = spec.p;
    std::vector<StepData> out;
    out.reserve(static_cast<std::size_t>(spec.n_steps));
    for (int k = 0; k < spec.n_steps; ++k) {
        const int window_start = k / 2;
        Vector beta = Vector::Constant(p, -spec.class_weight);
        for (int t = window_start; t < window_start + spec.interest_width; ++t) {
            beta.segment(static_cast<Index>(t) * spec.block_size, spec.block_size).setConstant(spec.class_weight);
        }
        CounterRng rng(derive_seed(seed, {tag_step, static_cast<std::uint64_t>(k)}));
        Matrix x = Matrix::Zero(spec.n_per_step, p);
        Vector y(spec.n_per_step);
        for (Index i = 0; i < spec.n_per_step; ++i) {
            const auto topic = static_cast<Index>(std::min(rng.uniform() * spec.n_topics, spec.n_topics - 1.0));
            for (Index j = 0; j < p; ++j) {
                const bool own = j / spec.block_size == topic;
                x(i, j) = rng.uniform() < (own ? spec.on_topic_rate : spec.off_topic_rate) ? 1.0 : 0.0;
            }
            const double eta = x.row(i).dot(beta);
            const double prob = 1.0 / (1.0 + std::exp(-eta));
            y(i) = rng.uniform() < prob ? 1.0 : 0.0;
        }
        out.push_back({Dataset(std::move(x), std::move(y)), {beta, 0.0}});
    }
    return out;
}

}  // namespace tlasso
