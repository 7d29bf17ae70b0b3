#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tlasso {

/// quick: a few seconds per suite; full: the sizes used by the acceptance run.
enum class VerifyScale { quick, full };

/// One record per suite: {"suite", "pass", "scale", "seed", "params", "counts", "checks"}.
/// Every entry of "checks" carries its own "pass"; the suite passes when all do.
struct SuiteReport {
    std::string name;
    bool pass = false;
    nlohmann::json record;
};

/// Grid-oracle agreement of the threshold map, plus exact monotonicity,
/// symmetry and the alpha = 1 reduction.
SuiteReport verify_threshold(VerifyScale scale, std::uint64_t seed = 1);

/// Coordinate descent against the proximal-gradient oracle on small random
/// problems, the alpha = 1 and alpha = 0 reductions against an exact Lasso
/// path, and the KKT residual of every one of those fits.
SuiteReport verify_kkt(VerifyScale scale, std::uint64_t seed = 2);

/// Trivial-solution predicates against the solver in both directions, and
/// minimality of lambda_max.
SuiteReport verify_unchanging(VerifyScale scale, std::uint64_t seed = 3);

/// Exact sign predicates against solver signs on orthogonal-support designs,
/// and sufficient forms (as published and corrected) against the exact ones.
SuiteReport verify_signs(VerifyScale scale, std::uint64_t seed = 4);

/// Monte-Carlo violation rate of the error bound and its small-lambda ratios.
SuiteReport verify_bounds(VerifyScale scale, std::uint64_t seed = 5);

std::vector<std::string> suite_names();

/// Runs one named suite, or every suite for "all". Throws InvalidSpec on an unknown name.
std::vector<SuiteReport> run_suites(const std::string& name, VerifyScale scale);

}  // namespace tlasso
