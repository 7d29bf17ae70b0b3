#include "tlasso/theory.hpp"

#include "tlasso/error.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/util/parallel.hpp"

#include <cmath>
#include <random>

namespace tlasso {

BoundExperimentResult bound_violation_experiment(int n, int p, int s, double sigma, double alpha, double c,
                                                 int trials, std::uint64_t seed, bool perturb) {
    if (n <= p) throw InvalidSpec("bound experiment needs n > p");
    if (s < 1 || s > p) throw InvalidSpec("s must lie in [1, p]");
    if (trials < 1) throw InvalidSpec("trials must be >= 1");
    if (!(sigma >= 0.0) || !(c > 0.0)) throw InvalidSpec("sigma must be >= 0 and c > 0");
    PenaltySpec{0.0, alpha}.validate();

    BoundExperimentResult out;
    out.trials = trials;
    const double scale = sigma > 0.0 ? sigma : 1.0;
    out.lambda_n = (scale / c) * std::sqrt(2.0 * std::log(2.0 * p) / n) * 1.01;
    out.nu = nu_nc(n, p, c, out.lambda_n, sigma);

    std::vector<char> violated(static_cast<std::size_t>(trials), 0);
    parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
        CounterRng rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        std::normal_distribution<double> normal(0.0, 1.0);
        Matrix x(n, p);
        for (Index j = 0; j < p; ++j) {
            for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
        }
        Vector beta_star = Vector::Zero(p);
        for (Index j : sample_indices(p, s, rng)) beta_star(j) = 2.0 * rng.uniform() - 1.0;
        Vector tilde = beta_star;
        if (perturb) {
            for (Index j : sample_indices(p, s, rng)) tilde(j) += rng.uniform() - 0.5;
        }
        Vector eps(n);
        for (Index i = 0; i < n; ++i) eps(i) = sigma * normal(rng);

        const Dataset d(x, x * beta_star + eps);
        FitConfig cfg;
        cfg.tol = 1e-10;
        const FitResult fit = cd_fit(d, {out.lambda_n, alpha}, {tilde, 0.0}, cfg);

        BoundInputs b;
        b.alpha = alpha;
        b.c = c;
        b.lambda_n = out.lambda_n;
        b.s = s;
        b.phi = gre_proxy(x);
        b.delta_l1 = (tilde - beta_star).lpNorm<1>();
        const double err = (fit.coefficients.beta - beta_star).squaredNorm();
        violated[t] = err > error_bound(b) ? 1 : 0;
    });
    for (char v : violated) out.violations += v;
    out.violation_rate = static_cast<double>(out.violations) / trials;
    return out;
}

}  // namespace tlasso
