#pragma once

#include "tlasso/solver.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tlasso {

// ---- oracles ---------------------------------------------------------------

struct OracleOptions {
    double tol = 1e-12;  ///< stop when a proximal step moves no coordinate more than this
    long max_iter = 10'000'000;
};

/// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double top_eigenvalue(const Matrix& sym, double tol = 1e-13, int max_iter = 1'000'000);

/// Squared-loss minimizer by proximal gradient with step 1/L, L the top
/// eigenvalue of (1/n) X'X. Throws NoConvergence past max_iter.
Coefficients brute_force_fit(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                             const OracleOptions& opts = {});

/// Minimizer over a uniform grid of spacing `resolution` on a box containing 0,
/// tilde and the least-squares point; p must be 1 or 2. Uses convexity along
/// each axis (nested bisection on the discrete slope).
Coefficients grid_search_fit(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                             double resolution = 1e-5);

/// Exact plain-Lasso solution at `lambda` by following the piecewise-linear
/// path from lambda_max (LARS with the lasso drop step). Needs X'X invertible
/// on every visited active set.
Vector lasso_homotopy(const Matrix& x, const Vector& y, double lambda);

/// Smallest eigenvalue of (1/n) X'X, clamped at 0.
double gre_proxy(const Matrix& x);

// ---- estimation-error bounds ----------------------------------------------

struct BoundInputs {
    double alpha = 1.0;
    double c = 0.5;
    double lambda_n = 0.1;
    double s = 1.0;
    double phi = 1.0;
    double delta_l1 = 0.0;  ///< ||Delta||_1 (||Delta*||_1 for the two-stage bound)
    // two-stage extras
    double lambda_m = 0.0;
    double s_prime = 0.0;
    double phi_prime = 1.0;
    double c_prime = 0.5;

    void validate() const;
};

/// ((a+c)^2 l^2 s / phi^2) * (1 + sqrt(1 + 2(1-a) phi ||D||_1 / ((a+c)^2 l s)))^2
double error_bound(const BoundInputs& b);

/// exp(-n c^2 l^2 / (2 sigma^2) + log(2p)), unclamped.
double nu_nc(int n, int p, double c, double lambda, double sigma);

/// The error bound with the source-stage term 4(1-a)(1+c') phi l_m s' / ((a+c)^2 phi' l_n s)
/// added under the square root.
double two_stage_bound(const BoundInputs& b);

enum class ScreeningMode { paper_literal, sqrt_variant };

/// Per support index of beta*: |beta*_j| > error_bound (literal) or > sqrt(error_bound).
std::vector<bool> screening_predicate(const Vector& beta_star, const BoundInputs& b, ScreeningMode mode);

// ---- sign conditions -------------------------------------------------------

struct TheoryCase {
    Vector beta_star;
    Vector tilde;
    Vector delta;  ///< tilde - beta_star
    double noise_sigma = 1.0;
    double c = 0.5;
    int s = 0;
    std::vector<Index> support;  ///< supp(beta_star)

    static TheoryCase make(Vector beta_star, Vector tilde, double noise_sigma = 1.0, double c = 0.5);
    std::vector<Index> tilde_support() const;
};

/// Design and noise for the sign theorems; y = X beta* + epsilon.
struct SignCase {
    Matrix x;
    Vector epsilon;

    Dataset dataset(const TheoryCase& tc) const;
};

struct SignEvaluation {
    bool holds = false;
    bool first = false;   ///< sign condition on the (initial) support
    bool second = false;  ///< certificate on the complement
    Vector w;             ///< per support index, aligned with the support list
    double first_margin = 0.0;
    double second_margin = 0.0;
    /// Smallest slack over both conditions, negative when violated.
    double margin() const;
};

/// Exact recovery test: some minimizer has sgn = sgn(beta*). X_S must be
/// orthonormal in the (1/n) inner product. w_j comes from the KKT relation
/// w_j = -D_j + S(l a sgn(b*_j) + D_j - x_j'e/n, l (1-a)).
SignEvaluation sign_recovery_exact(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc);

/// Exact unchanging test: some minimizer has sgn = sgn(tilde), with X orthonormal
/// on S~ = supp(tilde). Coefficients of beta* outside S~ are folded into the noise.
SignEvaluation sign_unchanging_exact(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc);

/// The three-branch w table for eps = 0, tilde_{S^c} = 0, aligned with tc.support.
Vector remark_w_table(const TheoryCase& tc, double lambda);

enum class SufficientForm {
    published,  ///< conditions as printed, plus the noise event ||X'e/n||_inf <= l/2
    corrected,  ///< constants re-derived from the proof; see README
};

bool sign_recovery_sufficient(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc,
                              SufficientForm form);
bool sign_unchanging_sufficient(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc,
                                SufficientForm form);

/// max over j outside `block` of sum over k in `block` of |(1/n) x_j'x_k|.
double incoherence(const Matrix& x, const std::vector<Index>& block);

/// Throws NotOrthogonal unless (1/n) X_B'X_B = I within 1e-10.
void require_orthonormal(const Matrix& x, const std::vector<Index>& block);

class CounterRng;

/// n x p design whose `block` columns are sqrt(n) times an orthonormal basis
/// (QR of Gaussian columns); every other column mixes the block with weight
/// `coherence` and fresh Gaussian noise.
Matrix orthogonal_block_design(Index n, Index p, const std::vector<Index>& block, double coherence,
                               CounterRng& rng);

// ---- Monte-Carlo bound check ----------------------------------------------

struct BoundExperimentResult {
    double violation_rate = 0.0;
    int violations = 0;
    int trials = 0;
    double lambda_n = 0.0;
    double nu = 0.0;  ///< unclamped
};

/// Gaussian designs and noise; lambda_n = (sigma/c) sqrt(2 log(2p)/n) * 1.01
/// (sigma taken as 1 in that formula when sigma = 0); tilde = beta* plus a
/// sparse perturbation, or beta* itself when `perturb` is false.
BoundExperimentResult bound_violation_experiment(int n, int p, int s, double sigma, double alpha, double c,
                                                 int trials, std::uint64_t seed, bool perturb = true);

}  // namespace tlasso
