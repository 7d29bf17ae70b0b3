#include <doctest.h>

#include "tlasso/error.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/theory.hpp"
#include "tlasso/theory/verify.hpp"

#include <cmath>
#include <random>

using namespace tlasso;

namespace {

BoundInputs inputs(double alpha, double c, double lambda, double s, double phi, double delta_l1) {
    BoundInputs b;
    b.alpha = alpha;
    b.c = c;
    b.lambda_n = lambda;
    b.s = s;
    b.phi = phi;
    b.delta_l1 = delta_l1;
    return b;
}

Matrix gaussian(Index n, Index p, std::uint64_t seed) {
    CounterRng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x(n, p);
    for (Index j = 0; j < p; ++j) {
        for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
    }
    return x;
}

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

FitConfig tight() {
    FitConfig cfg;
    cfg.tol = 1e-13;
    cfg.max_sweeps = 1'000'000;
    return cfg;
}

bool same_signs(const Vector& a, const Vector& b) {
    for (Index j = 0; j < a.size(); ++j) {
        const auto sa = (a(j) > 1e-9) - (a(j) < -1e-9);
        const auto sb = (b(j) > 0) - (b(j) < 0);
        if (sa != sb) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("error bound examples") {
    CHECK(error_bound(inputs(0.5, 0.5, 0.1, 10, 1, 0)) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(error_bound(inputs(1.0, 0.5, 0.1, 10, 1, 3.0)) == doctest::Approx(4 * 2.25 * 0.01 * 10).epsilon(1e-14));
    CHECK(error_bound(inputs(0.3, 0.5, 0.2, 4, 0.8, 1.5)) == doctest::Approx(1.5071178142898736).epsilon(1e-14));
    for (double a : {0.0, 0.25, 0.75}) {
        const double b = error_bound(inputs(a, 0.5, 0.1, 10, 1, 0));
        CHECK(b == doctest::Approx(4 * (a + 0.5) * (a + 0.5) * 0.01 * 10).epsilon(1e-14));
        CHECK(b < error_bound(inputs(1.0, 0.5, 0.1, 10, 1, 0)));
    }
    CHECK_THROWS_AS(error_bound(inputs(0.5, 0.5, 0.1, 10, 0, 0)), InvalidSpec);
    CHECK_THROWS_AS(error_bound(inputs(0.5, 0.5, 0.0, 10, 1, 0)), InvalidSpec);
}

TEST_CASE("error bound grows with alpha when the anchor is exact") {
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double b = error_bound(inputs(i / 100.0, 0.5, 0.1, 5, 0.9, 0.0));
        CHECK(b >= prev);
        prev = b;
    }
}

TEST_CASE("two-stage bound reductions") {
    BoundInputs b = inputs(0.4, 0.5, 0.1, 5, 0.9, 0.0);
    b.lambda_m = 0.0;
    b.s_prime = 3;
    const double plain = 4 * 0.81 * 0.01 * 5 / 0.81;
    CHECK(two_stage_bound(b) == doctest::Approx(plain).epsilon(1e-14));
    b.lambda_m = 0.3;
    b.s_prime = 0;
    CHECK(two_stage_bound(b) == doctest::Approx(plain).epsilon(1e-14));
    b.s_prime = 3;
    CHECK(two_stage_bound(b) > plain);

    BoundInputs ones = inputs(1, 1, 1, 1, 1, 1);
    ones.lambda_m = ones.s_prime = ones.phi_prime = ones.c_prime = 1;
    CHECK(two_stage_bound(ones) == doctest::Approx(16.0).epsilon(1e-15));
    ones.alpha = 0.5;
    CHECK(two_stage_bound(ones) == doctest::Approx(17.57774721070176).epsilon(1e-14));
}

TEST_CASE("nu is reported unclamped") {
    const double lam = 0.1;
    CHECK(nu_nc(200, 20, 0.5, lam, 1.0) == doctest::Approx(std::exp(-200 * 0.25 * 0.01 / 2 + std::log(40.0))));
    CHECK(nu_nc(200, 20, 0.5, lam, 1.0) > 1.0);
    CHECK(nu_nc(10000, 20, 0.5, lam, 1.0) == doctest::Approx(40.0 * std::exp(-12.5)));
    CHECK(nu_nc(10, 20, 0.5, lam, 0.0) == 0.0);
}

TEST_CASE("screening predicate") {
    const BoundInputs b = inputs(0.5, 0.5, 0.1, 10, 1, 0);  // bound 0.4
    const auto lit = screening_predicate(vec({0.3, 0.0, -0.8}), b, ScreeningMode::paper_literal);
    REQUIRE(lit.size() == 2);
    CHECK_FALSE(lit[0]);
    CHECK(lit[1]);
    const auto root = screening_predicate(vec({0.3, 0.0, -0.7}), b, ScreeningMode::sqrt_variant);
    CHECK_FALSE(root[0]);
    CHECK(root[1]);
}

TEST_CASE("gre proxy") {
    Matrix eye(4, 2);
    eye << 1, 1, 1, -1, 1, 1, 1, -1;
    CHECK(gre_proxy(eye) == doctest::Approx(1.0).epsilon(1e-15));

    Matrix dup = gaussian(30, 3, 1);
    dup.col(2) = dup.col(0);
    CHECK(gre_proxy(dup) <= 1e-12);

    // Independent estimate: power iteration on the inverse Gram matrix.
    const Matrix x = gaussian(200, 20, 2);
    const Matrix gram = x.transpose() * x / 200.0;
    const Eigen::LDLT<Matrix> ldlt(gram);
    Vector v = Vector::Ones(20).normalized();
    double mu = 0.0;
    for (int it = 0; it < 100000; ++it) {
        Vector next = ldlt.solve(v);
        const double m = v.dot(next);
        next.normalize();
        v = next;
        if (std::abs(m - mu) <= 1e-15 * m) break;
        mu = m;
    }
    CHECK(std::abs(gre_proxy(x) - 1.0 / mu) <= 1e-8);
}

TEST_CASE("oracles: least squares, Lasso and grid agreement") {
    const Matrix x = gaussian(25, 4, 3);
    const Vector y = x * vec({1.0, 0.0, -0.5, 0.2}) + 0.3 * gaussian(25, 1, 4).col(0);
    const Dataset d(x, y);
    const Vector ls = x.colPivHouseholderQr().solve(y);
    const Coefficients t{vec({0.5, 0.5, 0.0, -1.0}), 0.0};
    CHECK((brute_force_fit(d, {0.0, 0.3}, t).beta - ls).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((brute_force_fit(d, {0.1, 1.0}, t).beta - lasso_homotopy(x, y, 0.1)).cwiseAbs().maxCoeff() <= 1e-9);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Index p = 1 + static_cast<Index>(seed % 2);
        const Matrix xs = gaussian(15, p, 100 + seed);
        const Vector ys = xs.col(0) + gaussian(15, 1, 200 + seed).col(0);
        const Dataset ds(xs, ys);
        const Coefficients ts{Vector::Constant(p, 0.4), 0.0};
        const PenaltySpec pen{0.1 + 0.05 * static_cast<double>(seed), 0.1 * static_cast<double>(seed)};
        const Vector bf = brute_force_fit(ds, pen, ts).beta;
        const Vector gs = grid_search_fit(ds, pen, ts).beta;
        CHECK((bf - gs).cwiseAbs().maxCoeff() <= 2e-5);
        CHECK((bf - cd_fit(ds, pen, ts, tight()).coefficients.beta).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("orthogonal block designs") {
    CounterRng rng(5);
    const std::vector<Index> block{1, 3, 4};
    const Matrix x = orthogonal_block_design(40, 8, block, 0.3, rng);
    CHECK_NOTHROW(require_orthonormal(x, block));
    CHECK_THROWS_AS(require_orthonormal(x, {0, 1}), NotOrthogonal);
    CHECK(incoherence(x, block) > 0.0);

    Matrix toy(4, 3);
    toy << 1, 1, 0.5, 1, -1, 0.5, 1, 1, 0.5, 1, -1, 0.5;
    CHECK(incoherence(toy, {0, 1}) == doctest::Approx(0.5));
}

TEST_CASE("sign recovery: exact test on a clean incoherent design") {
    CounterRng rng(6);
    const std::vector<Index> block{0, 2, 5};
    SignCase sc{orthogonal_block_design(60, 8, block, 0.1, rng), Vector::Zero(60)};
    const Vector beta = vec({2.0, 0, -1.5, 0, 0, 3.0, 0, 0});
    const TheoryCase tc = TheoryCase::make(beta, beta);
    for (double alpha : {0.0, 0.3, 0.5, 0.8, 1.0}) {
        const PenaltySpec pen{0.2, alpha};
        CHECK(sign_recovery_exact(sc, pen, tc).holds);
        const Vector fit = cd_fit(sc.dataset(tc), pen, {tc.tilde, 0.0}, tight()).coefficients.beta;
        CHECK(same_signs(fit, beta));
    }
}

TEST_CASE("the three-branch w table holds at alpha = 1/2") {
    CounterRng rng(7);
    const std::vector<Index> block{0, 1, 2, 3};
    const SignCase sc{orthogonal_block_design(30, 6, block, 0.2, rng), Vector::Zero(30)};
    const Vector beta = vec({1.0, -1.0, 2.0, -0.5, 0, 0});
    // delta per entry covers each branch: >= 0, in [-lambda, 0), below -lambda
    const Vector tilde = vec({1.1, -0.9, 1.7, -0.9, 0, 0});
    const TheoryCase tc = TheoryCase::make(beta, tilde);
    const double lam = 0.2;
    const Vector table = remark_w_table(tc, lam);
    CHECK(table(0) == 0.0);
    CHECK(table(1) == doctest::Approx(-0.1));
    CHECK(table(2) == doctest::Approx(0.2));
    CHECK(table(3) == 0.0);
    CHECK((sign_recovery_exact(sc, {lam, 0.5}, tc).w - table).cwiseAbs().maxCoeff() <= 1e-15);
    // Away from 1/2 the relation gives a different w.
    CHECK((sign_recovery_exact(sc, {lam, 0.9}, tc).w - table).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("sign unchanging: clean-anchor reductions") {
    CounterRng rng(8);
    const std::vector<Index> block{1, 4};
    const SignCase sc{orthogonal_block_design(50, 7, block, 0.9, rng), Vector::Zero(50)};
    const Vector beta = vec({0, 0.5, 0, 0, -0.25, 0, 0});
    const TheoryCase tc = TheoryCase::make(beta, beta);
    for (double alpha : {0.0, 0.25, 0.5}) CHECK(sign_unchanging_exact(sc, {5.0, alpha}, tc).second);
    for (double alpha : {0.6, 0.75, 1.0}) {
        for (double lam : {0.1, 0.4, 1.0}) {
            const bool expected = 0.25 > lam * (2 * alpha - 1);
            CHECK(sign_unchanging_exact(sc, {lam, alpha}, tc).first == expected);
        }
    }
}

TEST_CASE("sufficient conditions: documented thresholds") {
    Matrix x(4, 2);
    x << 1, 1, 1, -1, 1, 1, 1, -1;
    const SignCase sc{x, Vector::Zero(4)};
    // beta*_min threshold lambda * max(3/2 - 2a, 2a - 1/2): lambda/2 at a = 1/2, 3 lambda/2 at a = 1
    const TheoryCase just_above = TheoryCase::make(vec({0.51, 0}), vec({0.51, 0}));
    const TheoryCase just_below = TheoryCase::make(vec({0.49, 0}), vec({0.49, 0}));
    CHECK(sign_recovery_sufficient(sc, {1.0, 0.5}, just_above, SufficientForm::published));
    CHECK_FALSE(sign_recovery_sufficient(sc, {1.0, 0.5}, just_below, SufficientForm::published));
    const TheoryCase big = TheoryCase::make(vec({1.51, 0}), vec({1.51, 0}));
    const TheoryCase short_of = TheoryCase::make(vec({1.49, 0}), vec({1.49, 0}));
    CHECK(sign_recovery_sufficient(sc, {1.0, 1.0}, big, SufficientForm::published));
    CHECK_FALSE(sign_recovery_sufficient(sc, {1.0, 1.0}, short_of, SufficientForm::published));

    // Unchanging: incoherence cap 1/(4a-1)+ is vacuous at a <= 1/4 and equals 1 at a = 1/2.
    Matrix coherent(4, 2);
    coherent << 1, 3, 1, 3, 1, 3, 1, 3;
    const SignCase sc2{coherent, Vector::Zero(4)};
    const TheoryCase tc = TheoryCase::make(vec({1.0, 0}), vec({1.0, 0}));
    CHECK(sign_unchanging_sufficient(sc2, {0.1, 0.25}, tc, SufficientForm::published));
    CHECK_FALSE(sign_unchanging_sufficient(sc2, {0.1, 0.5}, tc, SufficientForm::published));
    coherent.col(1) << 1, 1, 1, 1;
    CHECK(sign_unchanging_sufficient({coherent, Vector::Zero(4)}, {0.1, 0.5}, tc, SufficientForm::published));
}

TEST_CASE("published recovery conditions admit a failing instance; corrected ones reject it") {
    // alpha = 1, lambda = 1: incoherence exactly 1 and noise correlations exactly lambda/2.
    Matrix x(4, 2);
    x << 1, 2, 1, 0, 1, 2, 1, 0;
    const Vector eps = vec({0.5, -1.5, 0.5, -1.5});
    const SignCase sc{x, eps};
    const TheoryCase tc = TheoryCase::make(vec({2.0, 0.0}), vec({2.0, 0.0}));
    const PenaltySpec pen{1.0, 1.0};
    CHECK(sign_recovery_sufficient(sc, pen, tc, SufficientForm::published));
    CHECK_FALSE(sign_recovery_exact(sc, pen, tc).holds);
    CHECK_FALSE(sign_recovery_sufficient(sc, pen, tc, SufficientForm::corrected));
    const Vector fit = cd_fit(sc.dataset(tc), pen, {tc.tilde, 0.0}, tight()).coefficients.beta;
    CHECK(fit(0) == doctest::Approx(0.0));
    CHECK(fit(1) == doctest::Approx(0.75));
}

TEST_CASE("published unchanging conditions admit a failing instance; corrected ones reject it") {
    // alpha = 0 leaves coherence unconstrained in the published form.
    Matrix x(4, 2);
    x << 1, 4, 1, 2, 1, 4, 1, 2;
    const SignCase sc{x, Vector::Zero(4)};
    const TheoryCase tc = TheoryCase::make(vec({1.0, 0.0}), vec({1.5, 0.0}));
    const PenaltySpec pen{1.0, 0.0};
    CHECK(sign_unchanging_sufficient(sc, pen, tc, SufficientForm::published));
    CHECK_FALSE(sign_unchanging_exact(sc, pen, tc).holds);
    CHECK_FALSE(sign_unchanging_sufficient(sc, pen, tc, SufficientForm::corrected));
    const Vector fit = cd_fit(sc.dataset(tc), pen, {tc.tilde, 0.0}, tight()).coefficients.beta;
    CHECK_FALSE(same_signs(fit, tc.tilde));
}

TEST_CASE("bound experiment") {
    const auto clean = bound_violation_experiment(60, 10, 3, 0.0, 0.5, 0.5, 50, 1, false);
    CHECK(clean.violations == 0);
    CHECK(clean.trials == 50);
    const auto a = bound_violation_experiment(80, 10, 3, 1.0, 0.5, 0.5, 40, 2);
    const auto b = bound_violation_experiment(80, 10, 3, 1.0, 0.5, 0.5, 40, 2);
    CHECK(a.violation_rate == b.violation_rate);
    CHECK(a.nu == b.nu);
    CHECK(a.violation_rate <= std::min(a.nu, 1.0));
    CHECK(a.lambda_n == doctest::Approx(2.0 * std::sqrt(2.0 * std::log(20.0) / 80.0) * 1.01));
}

TEST_CASE("verification suites at quick scale") {
    for (const auto& name : suite_names()) {
        CAPTURE(name);
        const auto reports = run_suites(name, VerifyScale::quick);
        REQUIRE(reports.size() == 1);
        CHECK(reports[0].pass);
        CHECK(reports[0].record.at("pass").get<bool>());
        CHECK(reports[0].record.at("scale") == "quick");
    }
    CHECK_THROWS_AS(run_suites("nope", VerifyScale::quick), InvalidSpec);
}
