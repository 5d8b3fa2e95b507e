#pragma once

// Dense finite-dimensional vectors and linear maps.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace opsplit {

// A point of a finite-dimensional real space. Constructing from data checks
// that the dimension is at least one and that every entry is finite.
class RealVector {
 public:
  RealVector() = default;
  RealVector(std::initializer_list<double> entries);
  explicit RealVector(std::vector<double> entries);

  static RealVector zeros(std::size_t dim);
  static RealVector constant(std::size_t dim, double value);

  std::size_t dim() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> span() const noexcept { return data_; }
  std::span<double> span() noexcept { return data_; }
  const double* data() const noexcept { return data_.data(); }
  double* data() noexcept { return data_.data(); }
  const std::vector<double>& entries() const noexcept { return data_; }

  bool all_finite() const noexcept;

  RealVector& operator+=(const RealVector& other);
  RealVector& operator-=(const RealVector& other);
  RealVector& operator*=(double s);

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  struct Unchecked {};
  RealVector(Unchecked, std::vector<double> entries) : data_(std::move(entries)) {}
  friend RealVector combine(double, const RealVector&, double, const RealVector&);

  std::vector<double> data_;
};

// alpha * x + beta * y
RealVector combine(double alpha, const RealVector& x, double beta, const RealVector& y);

RealVector operator+(const RealVector& a, const RealVector& b);
RealVector operator-(const RealVector& a, const RealVector& b);
RealVector operator-(const RealVector& a);
RealVector operator*(double s, const RealVector& a);

double dot(const RealVector& a, const RealVector& b);
double norm(const RealVector& a);
double distance(const RealVector& a, const RealVector& b);
double max_abs(const RealVector& a);

// (x, z) as one vector of the product space, and back.
RealVector concat(const RealVector& x, const RealVector& z);
RealVector slice(const RealVector& v, std::size_t offset, std::size_t count);

// Row-major matrix viewed as a linear map from R^cols to R^rows.
class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(std::size_t rows, std::size_t cols);
  DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  DenseOperator(std::initializer_list<std::initializer_list<double>> rows);

  static DenseOperator identity(std::size_t n);
  static DenseOperator zeros(std::size_t rows, std::size_t cols);
  static DenseOperator diagonal(const RealVector& d);
  static DenseOperator from_rows(const std::vector<std::vector<double>>& rows);
  // Matrix whose columns are the given vectors.
  static DenseOperator from_columns(const std::vector<RealVector>& columns);
  // [left right], same row count.
  static DenseOperator hstack(const DenseOperator& left, const DenseOperator& right);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const std::vector<double>& row_major() const noexcept { return data_; }

  RealVector column(std::size_t c) const;
  DenseOperator transpose() const;
  bool is_identity() const noexcept;

  friend bool operator==(const DenseOperator&, const DenseOperator&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

RealVector apply(const DenseOperator& op, const RealVector& v);
RealVector adjoint_apply(const DenseOperator& op, const RealVector& w);

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator+(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator-(const DenseOperator& a, const DenseOperator& b);
DenseOperator operator*(double s, const DenseOperator& a);

// op^T op
DenseOperator gram(const DenseOperator& op);

double max_abs(const DenseOperator& m);
bool is_symmetric(const DenseOperator& m, double tol);

// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues ascending; eigenvectors are the matching columns.
struct SymmetricEigen {
  RealVector values;
  DenseOperator vectors;
};

SymmetricEigen symmetric_eigen(const DenseOperator& m);

// Largest singular value, from the eigenvalues of op^T op.
double operator_norm(const DenseOperator& op);

// Symmetric S with S S = m. Eigenvalues in [-1e-10, 0) are clamped to zero;
// anything more negative is rejected as not positive semidefinite.
DenseOperator psd_sqrt(const DenseOperator& m);

// Condition number of L^T L; rejects (singular_gram) above 1e12.
double check_gram_invertible(const DenseOperator& op);

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kMaxGramCondition = 1e12;

// LU with partial pivoting of a square matrix.
class LuFactorization {
 public:
  LuFactorization() = default;
  explicit LuFactorization(const DenseOperator& m);

  std::size_t dim() const noexcept { return n_; }
  RealVector solve(const RealVector& rhs) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
};

}  // namespace opsplit
