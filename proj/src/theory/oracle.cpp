#include "tlasso/theory.hpp"

#include "tlasso/error.hpp"
#include "tlasso/threshold.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace tlasso {

double top_eigenvalue(const Matrix& sym, double tol, int max_iter) {
    const Index p = sym.rows();
    if (p == 0 || sym.cols() != p) throw DimensionMismatch("top_eigenvalue needs a square nonempty matrix");
    Vector v(p);
    for (Index j = 0; j < p; ++j) v(j) = 1.0 + 0.1357 * static_cast<double>(j);
    v.normalize();
    double estimate = v.dot(sym * v);
    for (int it = 0; it < max_iter; ++it) {
        Vector next = sym * v;
        const double norm = next.norm();
        if (norm == 0.0) return 0.0;
        v = next / norm;
        const double updated = v.dot(sym * v);
        if (std::abs(updated - estimate) <= tol * std::abs(updated)) return updated;
        estimate = updated;
    }
    return estimate;
}

Coefficients brute_force_fit(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                             const OracleOptions& opts) {
    pen.validate();
    if (tilde.size() != d.p()) throw DimensionMismatch("initial estimate length does not match p");
    const double n = static_cast<double>(d.n());
    const Matrix gram = d.x().transpose() * d.x() / n;
    const Vector xty = d.x().transpose() * d.y() / n;
    // A hair above the estimate so the step never exceeds 1/L.
    const double lipschitz = top_eigenvalue(gram) * (1.0 + 1e-9);
    if (!(lipschitz > 0.0)) throw ValidationError("design has no nonzero column");

    const double g1 = pen.lambda / lipschitz;
    const double g2 = pen.lambda * (2.0 * pen.alpha - 1.0) / lipschitz;
    Vector beta = Vector::Zero(d.p());
    for (long it = 0; it < opts.max_iter; ++it) {
        const Vector v = beta - (gram * beta - xty) / lipschitz;
        double moved = 0.0;
        for (Index j = 0; j < d.p(); ++j) {
            const double next = transfer_threshold(v(j), {g1, g2, tilde.beta(j)});
            moved = std::max(moved, std::abs(next - beta(j)));
            beta(j) = next;
        }
        if (moved <= opts.tol) return {beta, 0.0};
    }
    throw NoConvergence("proximal gradient oracle did not reach stationarity in " + std::to_string(opts.max_iter) +
                        " iterations");
}

namespace {

double direct_objective(const Dataset& d, const PenaltySpec& pen, const Vector& tilde, const Vector& beta) {
    const double loss = (d.y() - d.x() * beta).squaredNorm() / (2.0 * static_cast<double>(d.n()));
    double pen_sum = 0.0;
    for (Index j = 0; j < beta.size(); ++j) {
        pen_sum += pen.alpha * std::abs(beta(j)) + (1.0 - pen.alpha) * std::abs(beta(j) - tilde(j));
    }
    return loss + pen.lambda * pen_sum;
}

// Index of a minimizer of a convex function over 0..last.
long argmin_convex(long last, const std::function<double(long)>& f) {
    long lo = 0;
    long hi = last;
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (f(mid) <= f(mid + 1)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace

Coefficients grid_search_fit(const Dataset& d, const PenaltySpec& pen, const Coefficients& tilde,
                             double resolution) {
    pen.validate();
    if (d.p() < 1 || d.p() > 2) throw InvalidSpec("grid search supports p = 1 or 2");
    if (tilde.size() != d.p()) throw DimensionMismatch("initial estimate length does not match p");
    const Vector ls = d.x().colPivHouseholderQr().solve(d.y());
    std::vector<double> lo(static_cast<std::size_t>(d.p()));
    std::vector<long> steps(static_cast<std::size_t>(d.p()));
    for (Index j = 0; j < d.p(); ++j) {
        const double a = std::min({0.0, tilde.beta(j), ls(j)}) - 1.0;
        const double b = std::max({0.0, tilde.beta(j), ls(j)}) + 1.0;
        lo[static_cast<std::size_t>(j)] = a;
        steps[static_cast<std::size_t>(j)] = static_cast<long>(std::ceil((b - a) / resolution));
    }
    const auto value = [&](std::size_t j, long i) { return lo[j] + static_cast<double>(i) * resolution; };

    Vector beta(d.p());
    if (d.p() == 1) {
        const long best = argmin_convex(steps[0], [&](long i) {
            beta(0) = value(0, i);
            return direct_objective(d, pen, tilde.beta, beta);
        });
        beta(0) = value(0, best);
        return {beta, 0.0};
    }
    // Partial minimization over the second axis keeps the outer profile convex.
    const auto inner = [&](long i) {
        beta(0) = value(0, i);
        const long k = argmin_convex(steps[1], [&](long kk) {
            beta(1) = value(1, kk);
            return direct_objective(d, pen, tilde.beta, beta);
        });
        return k;
    };
    const long best0 = argmin_convex(steps[0], [&](long i) {
        const long k = inner(i);
        beta(0) = value(0, i);
        beta(1) = value(1, k);
        return direct_objective(d, pen, tilde.beta, beta);
    });
    const long best1 = inner(best0);
    beta(0) = value(0, best0);
    beta(1) = value(1, best1);
    return {beta, 0.0};
}

Vector lasso_homotopy(const Matrix& x, const Vector& y, double lambda) {
    if (x.rows() != y.size()) throw DimensionMismatch("X and y differ in rows");
    if (!(lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
    const Index p = x.cols();
    const double n = static_cast<double>(x.rows());
    Vector beta = Vector::Zero(p);
    Vector corr = x.transpose() * y / n;
    Index first = 0;
    double level = corr.cwiseAbs().maxCoeff(&first);
    if (lambda >= level) return beta;

    std::vector<Index> active{first};
    std::vector<double> signs{corr(first) > 0.0 ? 1.0 : -1.0};
    Index last_changed = first;
    const double tiny = 1e-15 * std::max(1.0, level);

    for (Index guard = 0; guard < 50 * (p + 1); ++guard) {
        const auto m = static_cast<Index>(active.size());
        Matrix xa(x.rows(), m);
        Vector sa(m);
        for (Index k = 0; k < m; ++k) {
            xa.col(k) = x.col(active[static_cast<std::size_t>(k)]);
            sa(k) = signs[static_cast<std::size_t>(k)];
        }
        const Matrix gaa = xa.transpose() * xa / n;
        const Vector dir = gaa.ldlt().solve(sa);
        const Vector a = x.transpose() * (xa * dir) / n;

        double step = level - lambda;
        int event = 0;  // 0 target, 1 join, 2 drop
        Index who = -1;
        std::vector<char> is_active(static_cast<std::size_t>(p), 0);
        for (Index j : active) is_active[static_cast<std::size_t>(j)] = 1;
        for (Index j = 0; j < p; ++j) {
            if (is_active[static_cast<std::size_t>(j)] || j == last_changed) continue;
            for (double sgn : {1.0, -1.0}) {
                const double denom = 1.0 - sgn * a(j);
                if (denom <= 0.0) continue;
                const double t = (level - sgn * corr(j)) / denom;
                if (t > tiny && t < step) {
                    step = t;
                    event = 1;
                    who = j;
                }
            }
        }
        for (Index k = 0; k < m; ++k) {
            const Index j = active[static_cast<std::size_t>(k)];
            if (dir(k) == 0.0 || j == last_changed) continue;
            const double t = -beta(j) / dir(k);
            if (t > tiny && t < step) {
                step = t;
                event = 2;
                who = j;
            }
        }
        for (Index k = 0; k < m; ++k) beta(active[static_cast<std::size_t>(k)]) += step * dir(k);
        level -= step;
        corr = x.transpose() * (y - x * beta) / n;
        if (event == 0) return beta;
        last_changed = who;
        if (event == 1) {
            active.push_back(who);
            signs.push_back(corr(who) > 0.0 ? 1.0 : -1.0);
        } else {
            beta(who) = 0.0;
            const auto it = std::find(active.begin(), active.end(), who);
            signs.erase(signs.begin() + (it - active.begin()));
            active.erase(it);
        }
    }
    throw NoConvergence("homotopy exceeded its event budget");
}

double gre_proxy(const Matrix& x) {
    const Matrix gram = x.transpose() * x / static_cast<double>(x.rows());
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    return std::max(0.0, eig.eigenvalues()(0));
}

}  // namespace tlasso
