#include <doctest.h>

#include "tlasso/error.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/solver.hpp"
#include "tlasso/theory.hpp"
#include "tlasso/threshold.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace tlasso;

namespace {

const Dataset& fixture() {
    static const Dataset d = load_csv(TLASSO_TEST_DATA "/small.csv", "y");
    return d;
}

Coefficients fixture_tilde() {
    Vector t(4);
    t << 1.2, 0.4, 0.0, 0.0;
    return {t, 0.0};
}

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

FitConfig tight(double tol = 1e-12) {
    FitConfig cfg;
    cfg.tol = tol;
    cfg.max_sweeps = 1'000'000;
    return cfg;
}

Dataset random_dataset(Index n, Index p, std::uint64_t seed, Vector* beta_out = nullptr) {
    CounterRng rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix x(n, p);
    for (Index j = 0; j < p; ++j) {
        for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
    }
    Vector beta = Vector::Zero(p);
    for (Index j = 0; j < p; j += 2) beta(j) = 2.0 * rng.uniform() - 1.0;
    Vector y = x * beta;
    for (Index i = 0; i < n; ++i) y(i) += 0.5 * normal(rng);
    if (beta_out) *beta_out = beta;
    return Dataset(x, y);
}

}  // namespace

// Reference values: interior-point solution polished by an exact solve of the
// stationarity equations on its active pattern (tests/oracles/solve_fixtures.py).
TEST_CASE("squared loss matches frozen reference solutions") {
    struct Case {
        double lambda, alpha;
        Vector expected;
    };
    const Case cases[] = {
        {0.05, 1.0, vec({1.3856318817048363, -0.18005921726671614, -0.8544913470782454, -0.05598989109204622})},
        {0.2, 1.0, vec({1.0608687242019361, 0.0, -0.7456954786125352, 0.0})},
        {0.05, 0.5, vec({1.3856318817048363, -0.18005921726671614, -0.8544913470782454, -0.05598989109204622})},
        {0.2, 0.25, vec({1.2, -0.008566110124053967, -0.7409168716207223, 0.0})},
        {0.2, 0.0, vec({1.2, -0.008566110124053967, -0.7409168716207223, 0.0})},
        {0.5, 0.75, vec({0.9903048987206997, 0.0, -0.604136629707204, 0.0})},
        {0.0, 0.5, vec({1.500237515431964, -0.28310762256632555, -0.9190349413470913, -0.16726229393522973})},
    };
    for (const auto& c : cases) {
        CAPTURE(c.lambda);
        CAPTURE(c.alpha);
        const FitResult r = cd_fit(fixture(), {c.lambda, c.alpha}, fixture_tilde(), tight());
        CHECK(r.converged);
        CHECK((r.coefficients.beta - c.expected).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(r.kkt_residual <= 1e-11);
    }
}

TEST_CASE("logistic loss matches frozen reference solutions") {
    struct Case {
        double lambda, alpha;
        Vector expected;
        double objective;
    };
    const Case cases[] = {
        {0.02, 1.0, vec({3.1401000268389554, -0.6870909648000695, -2.221965744229195, 1.1228509539618732}),
         0.23975417632395746},
        {0.05, 0.5, vec({1.971141497522935, -0.5312251256030306, -1.2514951683340954, 0.13869460595551547}),
         0.37532310966134547},
        {0.05, 0.0, vec({1.971141497301027, -0.5312251253111838, -1.2514951680261421, 0.1386946058525861}),
         0.35532310966134545},
    };
    const Dataset& raw = fixture();
    const Dataset d(raw.x(), (raw.y().array() > 0.0).cast<double>().matrix());
    FitConfig cfg = tight(1e-11);
    cfg.loss = Loss::logistic;
    for (const auto& c : cases) {
        const FitResult r = cd_fit(d, {c.lambda, c.alpha}, fixture_tilde(), cfg);
        CHECK(r.converged);
        CHECK((r.coefficients.beta - c.expected).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(r.objective == doctest::Approx(c.objective).epsilon(1e-9));
        CHECK(r.kkt_residual <= 1e-9);
    }
}

TEST_CASE("objective examples") {
    const Dataset& d = fixture();
    const Coefficients zero = Coefficients::zeros(4);
    const double half_mean_sq = d.y().squaredNorm() / (2.0 * d.n());
    CHECK(objective(zero, d, {0.7, 0.3}, zero, Loss::squared) == doctest::Approx(half_mean_sq).epsilon(1e-15));

    const Coefficients b{vec({0.5, -1.0, 0.0, 2.0}), 0.0};
    const double loss = (d.y() - d.x() * b.beta).squaredNorm() / (2.0 * d.n());
    CHECK(objective(b, d, {0.0, 0.3}, fixture_tilde(), Loss::squared) == doctest::Approx(loss).epsilon(1e-15));
    CHECK(objective(b, d, {0.9, 0.0}, b, Loss::squared) == doctest::Approx(loss).epsilon(1e-15));
    // 0.5 * 0.4 * (3.5) + 0.5 * 0.6 * (0.7 + 1.4 + 0 + 2)
    CHECK(objective(b, d, {0.5, 0.4}, fixture_tilde(), Loss::squared) ==
          doctest::Approx(loss + 0.7 + 1.23).epsilon(1e-14));

    CHECK_THROWS_AS(objective(Coefficients::zeros(3), d, {0.1, 1.0}, zero, Loss::squared), DimensionMismatch);
    CHECK_THROWS_AS(objective(zero, d, {0.1, 1.0}, zero, Loss::logistic), NonBinaryLabels);
}

TEST_CASE("single standardized column gives the scalar Lasso solution") {
    Matrix x(4, 1);
    x << 1, -1, 1, -1;
    Vector y(4);
    y << 2.0, -1.0, 0.5, 0.3;
    const double rho = x.col(0).dot(y) / 4.0;
    for (double lam : {0.0, 0.1, 0.5, 2.0}) {
        const FitResult r = cd_fit(Dataset(x, y), {lam, 1.0}, Coefficients::zeros(1), tight());
        CHECK(r.coefficients.beta(0) == doctest::Approx(soft_threshold(rho, lam)).epsilon(1e-14));
    }
}

TEST_CASE("lambda = 0 gives least squares; alpha = 0 keeps a least-squares anchor") {
    const Dataset d = random_dataset(30, 5, 9);
    const Vector ls = d.x().colPivHouseholderQr().solve(d.y());
    const FitResult r = cd_fit(d, {0.0, 0.6}, Coefficients::zeros(5), tight());
    CHECK((r.coefficients.beta - ls).cwiseAbs().maxCoeff() <= 1e-9);
    for (double lam : {0.01, 0.3, 10.0}) {
        const FitResult a = cd_fit(d, {lam, 0.0}, {ls, 0.0}, tight());
        CHECK((a.coefficients.beta - ls).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("kkt residual examples") {
    const Dataset& d = fixture();
    const double lmax = (d.x().transpose() * d.y()).cwiseAbs().maxCoeff() / d.n();
    const Coefficients zero = Coefficients::zeros(4);
    CHECK(kkt_check(zero, d, {lmax, 1.0}, zero, Loss::squared) == 0.0);
    CHECK(kkt_check(zero, d, {lmax * 0.9, 1.0}, zero, Loss::squared) > 0.0);

    const FitResult r = cd_fit(d, {0.05, 0.5}, fixture_tilde(), tight());
    CHECK(r.kkt_residual <= 1e-11);
    Coefficients bumped = r.coefficients;
    bumped.beta(0) += 0.1;
    CHECK(kkt_check(bumped, d, {0.05, 0.5}, fixture_tilde(), Loss::squared) > 1e-3);
}

TEST_CASE("objective never increases across passes") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset d = random_dataset(25, 8, 100 + seed);
        CounterRng rng(seed);
        Vector t(8);
        for (Index j = 0; j < 8; ++j) t(j) = rng.uniform() < 0.5 ? 0.0 : 2.0 * rng.uniform() - 1.0;
        const PenaltySpec pen{0.05 + 0.3 * rng.uniform(), rng.uniform()};
        for (const Loss loss : {Loss::squared, Loss::logistic}) {
            const Dataset dd = loss == Loss::squared ? d : Dataset(d.x(), (d.y().array() > 0.0).cast<double>().matrix());
            FitConfig cfg = tight(1e-10);
            cfg.loss = loss;
            std::vector<double> values;
            cfg.on_sweep = [&](int, std::span<const double> b) {
                const Vector beta = Eigen::Map<const Vector>(b.data(), static_cast<Index>(b.size()));
                values.push_back(objective({beta, 0.0}, dd, pen, {t, 0.0}, loss));
            };
            cd_fit(dd, pen, {t, 0.0}, cfg);
            for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] <= values[i - 1] + 1e-12);
        }
    }
}

TEST_CASE("cd solution beats random probes and the proximal-gradient oracle") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        CounterRng rng(derive_seed(7, {seed}));
        const Index p = 1 + static_cast<Index>(rng() % 8);
        const Index n = 10 + static_cast<Index>(rng() % 31);
        const Dataset d = random_dataset(n, p, 500 + seed);
        Vector t(p);
        for (Index j = 0; j < p; ++j) t(j) = rng.uniform() < 0.5 ? 0.0 : 2.0 * rng.uniform() - 1.0;
        const PenaltySpec pen{0.5 * rng.uniform(), rng.uniform()};
        const FitResult r = cd_fit(d, pen, {t, 0.0}, tight(1e-10));
        const double best = r.objective;
        const Coefficients oracle = brute_force_fit(d, pen, {t, 0.0});
        CHECK(best <= objective(oracle, d, pen, {t, 0.0}, Loss::squared) + 1e-8);
        bool beaten = false;
        for (int k = 0; k < 1000; ++k) {
            Vector probe = r.coefficients.beta;
            for (Index j = 0; j < p; ++j) probe(j) += (rng.uniform() - 0.5) * (k < 500 ? 0.01 : 2.0);
            beaten = beaten || best > objective({probe, 0.0}, d, pen, {t, 0.0}, Loss::squared) + 1e-8;
        }
        CHECK_FALSE(beaten);
    }
}

TEST_CASE("alpha = 1 is the Lasso; alpha = 0 is the Lasso on the anchor's residual") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Dataset d = random_dataset(30, 5, 900 + seed);
        CounterRng rng(seed);
        Vector t(5);
        for (Index j = 0; j < 5; ++j) t(j) = 2.0 * rng.uniform() - 1.0;
        const double lam = 0.02 + 0.3 * rng.uniform();
        const FitResult one = cd_fit(d, {lam, 1.0}, {t, 0.0}, tight());
        CHECK((one.coefficients.beta - lasso_homotopy(d.x(), d.y(), lam)).cwiseAbs().maxCoeff() <= 1e-6);
        const FitResult zero = cd_fit(d, {lam, 0.0}, {t, 0.0}, tight());
        const Vector shifted = t + lasso_homotopy(d.x(), d.y() - d.x() * t, lam);
        CHECK((zero.coefficients.beta - shifted).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("permuting columns permutes the solution") {
    const Dataset d = random_dataset(20, 6, 42);
    Vector t(6);
    t << 0.3, 0.0, -0.5, 1.0, 0.0, 0.2;
    const std::vector<Index> perm{4, 2, 0, 5, 1, 3};
    Matrix xp(20, 6);
    Vector tp(6);
    for (Index k = 0; k < 6; ++k) {
        xp.col(k) = d.x().col(perm[static_cast<std::size_t>(k)]);
        tp(k) = t(perm[static_cast<std::size_t>(k)]);
    }
    const FitResult a = cd_fit(d, {0.08, 0.4}, {t, 0.0}, tight());
    const FitResult b = cd_fit(Dataset(xp, d.y()), {0.08, 0.4}, {tp, 0.0}, tight());
    for (Index k = 0; k < 6; ++k) CHECK(std::abs(b.coefficients.beta(k) - a.coefficients.beta(perm[static_cast<std::size_t>(k)])) <= 1e-10);
}

TEST_CASE("unstandardized columns are handled through their norms") {
    const Dataset d = random_dataset(30, 4, 5);
    Matrix scaled = d.x();
    scaled.col(1) *= 7.0;
    scaled.col(3) *= 0.2;
    const FitResult a = cd_fit(Dataset(scaled, d.y()), {0.1, 0.7}, Coefficients::zeros(4), tight());
    const Coefficients oracle = brute_force_fit(Dataset(scaled, d.y()), {0.1, 0.7}, Coefficients::zeros(4));
    CHECK((a.coefficients.beta - oracle.beta).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("zero-norm columns") {
    Matrix x = Matrix::Zero(5, 2);
    x.col(0) << 1, 2, 3, 4, 5;
    const Dataset d(x, Vector::LinSpaced(5, 0, 4));
    CHECK_THROWS_AS(cd_fit(d, {0.1, 0.5}, Coefficients::zeros(2), tight()), ZeroNormColumn);
    FitConfig cfg = tight();
    cfg.zero_columns = ZeroColumnPolicy::penalty_minimizer;
    const Coefficients t{vec({0.0, 0.8}), 0.0};
    CHECK(cd_fit(d, {0.1, 0.2}, t, cfg).coefficients.beta(1) == 0.8);
    CHECK(cd_fit(d, {0.1, 0.9}, t, cfg).coefficients.beta(1) == 0.0);
}

TEST_CASE("labels: {-1,+1} is remapped, anything else rejected") {
    const Dataset& raw = fixture();
    const Vector pm = (raw.y().array() > 0.0).select(Vector::Ones(raw.n()), -Vector::Ones(raw.n()));
    const Vector zo = (raw.y().array() > 0.0).cast<double>().matrix();
    FitConfig cfg = tight(1e-10);
    cfg.loss = Loss::logistic;
    const FitResult a = cd_fit(Dataset(raw.x(), pm), {0.05, 1.0}, Coefficients::zeros(4), cfg);
    const FitResult b = cd_fit(Dataset(raw.x(), zo), {0.05, 1.0}, Coefficients::zeros(4), cfg);
    CHECK(a.labels_remapped);
    CHECK_FALSE(b.labels_remapped);
    CHECK((a.coefficients.beta - b.coefficients.beta).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(cd_fit(raw, {0.05, 1.0}, Coefficients::zeros(4), cfg), NonBinaryLabels);
}

TEST_CASE("intercept on uncentered data equals the centered fit") {
    const Dataset d = random_dataset(40, 3, 8);
    Matrix xs = d.x().array() + 3.0;
    Vector ys = d.y().array() + 10.0;
    FitConfig cfg = tight();
    cfg.fit_intercept = true;
    const FitResult a = cd_fit(Dataset(xs, ys), {0.05, 1.0}, Coefficients::zeros(3), cfg);
    const Matrix xc = xs.rowwise() - xs.colwise().mean();
    const Vector yc = ys.array() - ys.mean();
    const FitResult b = cd_fit(Dataset(xc, yc), {0.05, 1.0}, Coefficients::zeros(3), tight());
    CHECK((a.coefficients.beta - b.coefficients.beta).cwiseAbs().maxCoeff() <= 1e-9);
    const double expected = ys.mean() - xs.colwise().mean().dot(b.coefficients.beta);
    CHECK(a.coefficients.intercept == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("stopping and validation") {
    const Dataset& d = fixture();
    FitConfig cfg;
    cfg.max_sweeps = 1;
    const FitResult r = cd_fit(d, {0.01, 0.5}, fixture_tilde(), cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.sweeps_used == 1);

    CHECK_THROWS_AS(cd_fit(d, {-1.0, 0.5}, fixture_tilde()), ValidationError);
    CHECK_THROWS_AS(cd_fit(d, {0.1, 1.5}, fixture_tilde()), ValidationError);
    CHECK_THROWS_AS(cd_fit(d, {0.1, 0.5}, Coefficients::zeros(3)), DimensionMismatch);
    FitConfig bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(cd_fit(d, {0.1, 0.5}, fixture_tilde(), bad), ValidationError);
    FitConfig warm;
    warm.warm = Coefficients::zeros(2);
    CHECK_THROWS_AS(cd_fit(d, {0.1, 0.5}, fixture_tilde(), warm), DimensionMismatch);
}

TEST_CASE("warm start reaches the same solution") {
    const Dataset& d = fixture();
    FitConfig cfg = tight();
    const FitResult cold = cd_fit(d, {0.1, 0.3}, fixture_tilde(), cfg);
    cfg.warm = Coefficients{vec({5.0, -5.0, 5.0, -5.0}), 0.0};
    const FitResult hot = cd_fit(d, {0.1, 0.3}, fixture_tilde(), cfg);
    CHECK((cold.coefficients.beta - hot.coefficients.beta).cwiseAbs().maxCoeff() <= 1e-10);
}
