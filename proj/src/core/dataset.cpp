#include "tlasso/core/dataset.hpp"

#include "tlasso/error.hpp"

#include <cmath>

namespace tlasso {

Dataset::Dataset(Matrix x, Vector y, std::vector<std::string> column_names)
    : x_(std::move(x)), y_(std::move(y)), names_(std::move(column_names)) {
    if (x_.rows() < 1 || x_.cols() < 1) {
        throw ValidationError("dataset needs n >= 1 and p >= 1");
    }
    if (x_.rows() != y_.size()) {
        throw DimensionMismatch("X has " + std::to_string(x_.rows()) + " rows but y has " +
                                std::to_string(y_.size()) + " entries");
    }
    if (!names_.empty() && static_cast<Index>(names_.size()) != x_.cols()) {
        throw DimensionMismatch("column_names length does not match p");
    }
    if (!x_.allFinite() || !y_.allFinite()) {
        throw ValidationError("dataset contains NaN or Inf");
    }
}

std::string Dataset::column_name(Index j) const {
    if (!names_.empty()) return names_[static_cast<std::size_t>(j)];
    return "x" + std::to_string(j + 1);
}

Dataset Dataset::subset(const std::vector<Index>& rows) const {
    Matrix xs(static_cast<Index>(rows.size()), p());
    Vector ys(static_cast<Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        xs.row(static_cast<Index>(i)) = x_.row(rows[i]);
        ys(static_cast<Index>(i)) = y_(rows[i]);
    }
    return Dataset(std::move(xs), std::move(ys), names_);
}

Dataset concatenate(const std::vector<const Dataset*>& parts) {
    if (parts.empty()) throw ValidationError("nothing to concatenate");
    const Index p = parts.front()->p();
    Index n = 0;
    for (const auto* d : parts) {
        if (d->p() != p) throw DimensionMismatch("concatenated datasets disagree on p");
        n += d->n();
    }
    Matrix x(n, p);
    Vector y(n);
    Index row = 0;
    for (const auto* d : parts) {
        x.middleRows(row, d->n()) = d->x();
        y.segment(row, d->n()) = d->y();
        row += d->n();
    }
    return Dataset(std::move(x), std::move(y), parts.front()->column_names());
}

Standardizer Standardizer::identity(Index p) {
    return {Vector::Zero(p), Vector::Ones(p), 0.0};
}

Dataset Standardizer::apply(const Dataset& d) const {
    if (d.p() != x_means.size()) throw DimensionMismatch("standardizer width does not match dataset");
    Matrix x = d.x();
    for (Index j = 0; j < x.cols(); ++j) {
        x.col(j) = (x.col(j).array() - x_means(j)) / x_sds(j);
    }
    Vector y = d.y().array() - y_mean;
    return Dataset(std::move(x), std::move(y), d.column_names());
}

Dataset Standardizer::invert(const Dataset& d) const {
    if (d.p() != x_means.size()) throw DimensionMismatch("standardizer width does not match dataset");
    Matrix x = d.x();
    for (Index j = 0; j < x.cols(); ++j) {
        x.col(j) = x.col(j).array() * x_sds(j) + x_means(j);
    }
    Vector y = d.y().array() + y_mean;
    return Dataset(std::move(x), std::move(y), d.column_names());
}

std::pair<Dataset, Standardizer> standardize(const Dataset& d, const StandardizeOptions& opts) {
    const Index n = d.n();
    const Index p = d.p();
    Standardizer s;
    s.x_means.resize(p);
    s.x_sds.resize(p);
    for (Index j = 0; j < p; ++j) {
        const double mean = d.x().col(j).mean();
        const double var = (d.x().col(j).array() - mean).square().sum() / static_cast<double>(n);
        double sd = std::sqrt(var);
        if (!(sd > 0.0)) {
            if (opts.constant_columns == ConstantColumnPolicy::error) {
                throw ConstantColumn(static_cast<std::size_t>(j));
            }
            sd = 1.0;
        }
        s.x_means(j) = mean;
        s.x_sds(j) = sd;
    }
    s.y_mean = opts.center_response ? d.y().mean() : 0.0;
    Dataset out = s.apply(d);
    return {std::move(out), std::move(s)};
}

Coefficients destandardize(const Coefficients& c, const Standardizer& s) {
    if (c.size() != s.x_sds.size()) {
        throw DimensionMismatch("coefficient length does not match standardizer");
    }
    Coefficients raw;
    raw.beta = c.beta.array() / s.x_sds.array();
    raw.intercept = s.y_mean + c.intercept - s.x_means.dot(raw.beta);
    return raw;
}

Coefficients to_standardized_scale(const Coefficients& raw, const Standardizer& s) {
    if (raw.size() != s.x_sds.size()) {
        throw DimensionMismatch("coefficient length does not match standardizer");
    }
    return {raw.beta.array() * s.x_sds.array(), 0.0};
}

}  // namespace tlasso
