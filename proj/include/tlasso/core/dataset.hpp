#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace tlasso {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;  // column-major: coordinate descent walks columns
using Vector = Eigen::VectorXd;

/// Design matrix X (n x p) and response y (n). Construction validates shape and finiteness.
class Dataset {
  public:
    Dataset(Matrix x, Vector y, std::vector<std::string> column_names = {});

    const Matrix& x() const noexcept { return x_; }
    const Vector& y() const noexcept { return y_; }
    const std::vector<std::string>& column_names() const noexcept { return names_; }

    Index n() const noexcept { return x_.rows(); }
    Index p() const noexcept { return x_.cols(); }

    /// Column label, falling back to "x<j>" when the dataset is unnamed.
    std::string column_name(Index j) const;

    /// Rows selected by `rows`, in the given order.
    Dataset subset(const std::vector<Index>& rows) const;

  private:
    Matrix x_;
    Vector y_;
    std::vector<std::string> names_;
};

/// Row-wise concatenation; all parts must share p.
Dataset concatenate(const std::vector<const Dataset*>& parts);

struct Coefficients {
    Vector beta;
    double intercept = 0.0;

    static Coefficients zeros(Index p) { return {Vector::Zero(p), 0.0}; }
    Index size() const noexcept { return beta.size(); }
};

/// Affine map taking raw columns to mean 0 / population-sd 1 and centering y.
struct Standardizer {
    Vector x_means;
    Vector x_sds;
    double y_mean = 0.0;

    Dataset apply(const Dataset& d) const;
    Dataset invert(const Dataset& d) const;

    /// Identity map for p features.
    static Standardizer identity(Index p);
};

enum class ConstantColumnPolicy {
    error,          ///< throw ConstantColumn
    keep_unscaled,  ///< center only; the column becomes all zeros
};

struct StandardizeOptions {
    bool center_response = true;
    ConstantColumnPolicy constant_columns = ConstantColumnPolicy::error;
};

/// Population (denominator n) standardization. The input is not modified.
std::pair<Dataset, Standardizer> standardize(const Dataset& d, const StandardizeOptions& opts = {});

/// Coefficients on the standardized scale -> slopes and intercept on the raw scale.
Coefficients destandardize(const Coefficients& c, const Standardizer& s);

/// Raw-scale coefficients -> coefficients on the standardized scale (intercept dropped).
Coefficients to_standardized_scale(const Coefficients& raw, const Standardizer& s);

/// Comma-separated file with a header row; y is taken from `response_column`.
Dataset load_csv(const std::filesystem::path& path, const std::string& response_column);

/// Header + numeric rows; no response column is split off.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};
CsvTable read_numeric_csv(const std::filesystem::path& path);

/// Two columns under the header "feature,beta", matched to the dataset's column
/// names; unlisted features are zero and a "(intercept)" row sets the intercept.
/// Throws MissingColumn for a name the dataset lacks.
Coefficients load_coefficients(const std::filesystem::path& path, const Dataset& d);

}  // namespace tlasso
