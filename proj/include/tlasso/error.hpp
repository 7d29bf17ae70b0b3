#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tlasso {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller-supplied data or parameters violate a documented precondition.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t row, std::size_t col, const std::string& what)
        : Error("parse error at row " + std::to_string(row) + ", column " +
                std::to_string(col) + ": " + what),
          row_(row),
          col_(col) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

  private:
    std::size_t row_;
    std::size_t col_;
};

class MissingColumn : public ValidationError {
  public:
    explicit MissingColumn(const std::string& name)
        : ValidationError("missing column '" + name + "'") {}
};

class ConstantColumn : public ValidationError {
  public:
    explicit ConstantColumn(std::size_t j)
        : ValidationError("column " + std::to_string(j) + " has zero standard deviation"),
          column_(j) {}

    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t column_;
};

class ZeroNormColumn : public ValidationError {
  public:
    explicit ZeroNormColumn(std::size_t j)
        : ValidationError("column " + std::to_string(j) + " has zero norm"), column_(j) {}

    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t column_;
};

class DimensionMismatch : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class NonBinaryLabels : public ValidationError {
  public:
    NonBinaryLabels() : ValidationError("logistic loss requires labels in {0,1} or {-1,+1}") {}
};

class DegenerateLabels : public ValidationError {
  public:
    DegenerateLabels() : ValidationError("AUC needs at least one positive and one negative label") {}
};

class NotOrthogonal : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class KTooLarge : public ValidationError {
  public:
    KTooLarge(std::size_t k, std::size_t n)
        : ValidationError("fold count " + std::to_string(k) + " exceeds sample count " +
                          std::to_string(n)) {}
};

class InvalidSpec : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Neither trivial solution becomes optimal at any finite penalty level.
class NoFiniteLambdaMax : public Error {
  public:
    NoFiniteLambdaMax() : Error("no finite lambda_max: neither trivial solution is attainable") {}
};

class NoConvergence : public Error {
  public:
    using Error::Error;
};

}  // namespace tlasso
