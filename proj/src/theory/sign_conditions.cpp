#include "tlasso/theory.hpp"

#include "tlasso/error.hpp"
#include "tlasso/sim/rng.hpp"
#include "tlasso/threshold.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tlasso {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

std::vector<Index> complement(Index p, const std::vector<Index>& block) {
    std::vector<char> in(static_cast<std::size_t>(p), 0);
    for (Index j : block) in[static_cast<std::size_t>(j)] = 1;
    std::vector<Index> out;
    for (Index j = 0; j < p; ++j) {
        if (!in[static_cast<std::size_t>(j)]) out.push_back(j);
    }
    return out;
}

Vector scaled_correlations(const Matrix& x, const Vector& v) {
    return x.transpose() * v / static_cast<double>(x.rows());
}

void check_case(const SignCase& sc, const TheoryCase& tc) {
    if (sc.x.cols() != tc.beta_star.size() || tc.tilde.size() != tc.beta_star.size()) {
        throw DimensionMismatch("design and coefficient vectors disagree on p");
    }
    if (sc.epsilon.size() != sc.x.rows()) throw DimensionMismatch("noise length does not match n");
}

double min_abs(const Vector& v, const std::vector<Index>& idx) {
    double m = inf;
    for (Index j : idx) m = std::min(m, std::abs(v(j)));
    return m;
}

bool delta_small(const TheoryCase& tc, const std::vector<Index>& idx, double lambda) {
    return std::all_of(idx.begin(), idx.end(), [&](Index j) { return std::abs(tc.delta(j)) <= lambda / 2.0; });
}

}  // namespace

TheoryCase TheoryCase::make(Vector beta_star, Vector tilde, double noise_sigma, double c) {
    if (beta_star.size() != tilde.size()) throw DimensionMismatch("beta* and tilde differ in length");
    TheoryCase tc;
    tc.delta = tilde - beta_star;
    tc.beta_star = std::move(beta_star);
    tc.tilde = std::move(tilde);
    tc.noise_sigma = noise_sigma;
    tc.c = c;
    for (Index j = 0; j < tc.beta_star.size(); ++j) {
        if (tc.beta_star(j) != 0.0) tc.support.push_back(j);
    }
    tc.s = static_cast<int>(tc.support.size());
    return tc;
}

std::vector<Index> TheoryCase::tilde_support() const {
    std::vector<Index> out;
    for (Index j = 0; j < tilde.size(); ++j) {
        if (tilde(j) != 0.0) out.push_back(j);
    }
    return out;
}

Dataset SignCase::dataset(const TheoryCase& tc) const {
    check_case(*this, tc);
    return Dataset(x, x * tc.beta_star + epsilon);
}

double SignEvaluation::margin() const { return std::min(first_margin, second_margin); }

double incoherence(const Matrix& x, const std::vector<Index>& block) {
    const double n = static_cast<double>(x.rows());
    double worst = 0.0;
    for (Index j : complement(x.cols(), block)) {
        double row = 0.0;
        for (Index k : block) row += std::abs(x.col(j).dot(x.col(k)) / n);
        worst = std::max(worst, row);
    }
    return worst;
}

void require_orthonormal(const Matrix& x, const std::vector<Index>& block) {
    const double n = static_cast<double>(x.rows());
    for (std::size_t a = 0; a < block.size(); ++a) {
        for (std::size_t b = a; b < block.size(); ++b) {
            const double g = x.col(block[a]).dot(x.col(block[b])) / n;
            if (std::abs(g - (a == b ? 1.0 : 0.0)) > 1e-10) {
                throw NotOrthogonal("support columns are not orthonormal in the (1/n) inner product");
            }
        }
    }
}

SignEvaluation sign_recovery_exact(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc) {
    pen.validate();
    check_case(sc, tc);
    const auto& support = tc.support;
    require_orthonormal(sc.x, support);
    const double lam = pen.lambda;
    const double a = pen.alpha;
    const Vector e = scaled_correlations(sc.x, sc.epsilon);

    SignEvaluation ev;
    ev.w.resize(static_cast<Index>(support.size()));
    ev.first_margin = inf;
    Vector w_full = Vector::Zero(sc.x.cols());
    for (std::size_t k = 0; k < support.size(); ++k) {
        const Index j = support[k];
        const double s = sgn(tc.beta_star(j));
        const double w = -tc.delta(j) + soft_threshold(lam * a * s + tc.delta(j) - e(j), lam * (1.0 - a));
        ev.w(static_cast<Index>(k)) = w;
        w_full(j) = w;
        ev.first_margin = std::min(ev.first_margin, s * (tc.beta_star(j) - w));
    }
    ev.first = ev.first_margin > 0.0;

    const Vector xw = sc.x * w_full;
    const Vector g = scaled_correlations(sc.x, xw);
    ev.second_margin = inf;
    for (Index j : complement(sc.x.cols(), support)) {
        const double st = sgn(tc.tilde(j));
        const double lhs = g(j) + e(j) + (1.0 - a) * lam * st;
        const double rhs = lam * (a + (1.0 - a) * (st == 0.0 ? 1.0 : 0.0));
        ev.second_margin = std::min(ev.second_margin, rhs - std::abs(lhs));
    }
    ev.second = ev.second_margin >= 0.0;
    ev.holds = ev.first && ev.second;
    return ev;
}

SignEvaluation sign_unchanging_exact(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc) {
    pen.validate();
    check_case(sc, tc);
    const auto block = tc.tilde_support();
    require_orthonormal(sc.x, block);
    const double lam = pen.lambda;
    const double a = pen.alpha;
    const auto outside = complement(sc.x.cols(), block);

    // Signal the initial support cannot express acts as extra noise.
    Vector eff_noise = sc.epsilon;
    for (Index j : outside) eff_noise += sc.x.col(j) * tc.beta_star(j);
    const Vector e = scaled_correlations(sc.x, eff_noise);

    SignEvaluation ev;
    ev.w.resize(static_cast<Index>(block.size()));
    ev.first_margin = inf;
    Vector gap = Vector::Zero(sc.x.cols());  // Delta - w on the block
    for (std::size_t k = 0; k < block.size(); ++k) {
        const Index j = block[k];
        const double s = sgn(tc.tilde(j));
        const double w = soft_threshold(lam * a * s + tc.delta(j) - e(j), lam * (1.0 - a));
        ev.w(static_cast<Index>(k)) = w;
        gap(j) = tc.delta(j) - w;
        ev.first_margin = std::min(ev.first_margin, s * (tc.tilde(j) - w));
    }
    ev.first = ev.first_margin > 0.0;

    const Vector g = scaled_correlations(sc.x, sc.x * gap);
    ev.second_margin = inf;
    for (Index j : outside) ev.second_margin = std::min(ev.second_margin, lam - std::abs(g(j) - e(j)));
    ev.second = ev.second_margin >= 0.0;
    ev.holds = ev.first && ev.second;
    return ev;
}

Vector remark_w_table(const TheoryCase& tc, double lambda) {
    Vector w(static_cast<Index>(tc.support.size()));
    for (std::size_t k = 0; k < tc.support.size(); ++k) {
        const Index j = tc.support[k];
        const double s = sgn(tc.beta_star(j));
        const double d = s * tc.delta(j);  // mirrored so the positive case covers both signs
        double v;
        if (d >= 0.0) {
            v = 0.0;
        } else if (d >= -lambda) {
            v = -tc.delta(j);
        } else {
            v = lambda * s;
        }
        w(static_cast<Index>(k)) = v;
    }
    return w;
}

bool sign_recovery_sufficient(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc,
                              SufficientForm form) {
    pen.validate();
    check_case(sc, tc);
    require_orthonormal(sc.x, tc.support);
    const double lam = pen.lambda;
    const double a = pen.alpha;
    const double m = std::max(1.5 - 2.0 * a, 2.0 * a - 0.5);
    const auto outside = complement(sc.x.cols(), tc.support);
    const bool tilde_off_support =
        std::all_of(outside.begin(), outside.end(), [&](Index j) { return tc.tilde(j) == 0.0; });
    const double coherence_cap = form == SufficientForm::published ? 1.0 : 0.5 / m;
    const double noise = scaled_correlations(sc.x, sc.epsilon).cwiseAbs().maxCoeff();
    return delta_small(tc, tc.support, lam) && min_abs(tc.beta_star, tc.support) > lam * m && tilde_off_support &&
           incoherence(sc.x, tc.support) <= coherence_cap && noise <= lam / 2.0;
}

bool sign_unchanging_sufficient(const SignCase& sc, const PenaltySpec& pen, const TheoryCase& tc,
                                SufficientForm form) {
    pen.validate();
    check_case(sc, tc);
    const double lam = pen.lambda;
    const double a = pen.alpha;
    const auto block = tc.tilde_support();
    const double four_a = 4.0 * a - 1.0;
    const double published_cap = four_a > 0.0 ? 1.0 / four_a : inf;
    if (form == SufficientForm::published) {
        const double noise = scaled_correlations(sc.x, sc.epsilon).cwiseAbs().maxCoeff();
        return delta_small(tc, block, lam) && min_abs(tc.beta_star, tc.support) > 2.0 * lam * a &&
               incoherence(sc.x, tc.support) <= published_cap && noise <= lam / 2.0;
    }
    require_orthonormal(sc.x, block);
    Vector eff_noise = sc.epsilon;
    for (Index j : complement(sc.x.cols(), block)) eff_noise += sc.x.col(j) * tc.beta_star(j);
    const double noise = scaled_correlations(sc.x, eff_noise).cwiseAbs().maxCoeff();
    return delta_small(tc, block, lam) && min_abs(tc.tilde, block) > 2.0 * lam * a &&
           incoherence(sc.x, block) <= std::min(1.0, published_cap) && noise <= lam / 2.0;
}

Matrix orthogonal_block_design(Index n, Index p, const std::vector<Index>& block, double coherence,
                               CounterRng& rng) {
    const auto m = static_cast<Index>(block.size());
    if (m > n) throw InvalidSpec("orthogonal block larger than n");
    if (!(coherence >= 0.0 && coherence <= 1.0)) throw InvalidSpec("coherence must lie in [0, 1]");
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto gaussian = [&](Index rows, Index cols) {
        Matrix g(rows, cols);
        for (Index c = 0; c < cols; ++c) {
            for (Index r = 0; r < rows; ++r) g(r, c) = normal(rng);
        }
        return g;
    };
    Matrix x(n, p);
    Matrix basis(n, m);
    if (m > 0) {
        const Eigen::HouseholderQR<Matrix> qr(gaussian(n, m));
        basis = qr.householderQ() * Matrix::Identity(n, m);
        basis *= std::sqrt(static_cast<double>(n));
    }
    for (Index k = 0; k < m; ++k) x.col(block[static_cast<std::size_t>(k)]) = basis.col(k);
    for (Index j : complement(p, block)) {
        Vector col = std::sqrt(1.0 - coherence * coherence) * gaussian(n, 1).col(0);
        if (m > 0) {
            Vector u = gaussian(m, 1).col(0);
            u /= u.norm();
            col += coherence * (basis * u);
        }
        x.col(j) = col;
    }
    return x;
}

}  // namespace tlasso
