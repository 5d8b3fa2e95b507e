#include "opsplit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "opsplit/error.hpp"
#include "opsplit/kernels.hpp"

namespace opsplit {
namespace {

void require_same_dim(const RealVector& a, const RealVector& b, const char* where) {
  if (a.dim() != b.dim()) {
    fail(ErrorKind::dimension_mismatch, std::string(where) + ": dimensions " +
                                            std::to_string(a.dim()) + " and " +
                                            std::to_string(b.dim()) + " differ");
  }
}

void validate_entries(const std::vector<double>& v) {
  if (v.empty()) fail(ErrorKind::invalid_input, "RealVector: dimension must be at least 1");
  for (double e : v) {
    if (!std::isfinite(e)) fail(ErrorKind::invalid_input, "RealVector: non-finite entry");
  }
}

}  // namespace

// RealVector ---------------------------------------------------------------

RealVector::RealVector(std::initializer_list<double> entries) : data_(entries) {
  validate_entries(data_);
}

RealVector::RealVector(std::vector<double> entries) : data_(std::move(entries)) {
  validate_entries(data_);
}

RealVector RealVector::zeros(std::size_t dim) { return RealVector(Unchecked{}, std::vector<double>(dim, 0.0)); }

RealVector RealVector::constant(std::size_t dim, double value) {
  return RealVector(std::vector<double>(dim, value));
}

bool RealVector::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double e) { return std::isfinite(e); });
}

RealVector& RealVector::operator+=(const RealVector& other) {
  require_same_dim(*this, other, "operator+=");
  kernels::active().axpby(1.0, data_.data(), 1.0, other.data(), data_.data(), data_.size());
  return *this;
}

RealVector& RealVector::operator-=(const RealVector& other) {
  require_same_dim(*this, other, "operator-=");
  kernels::active().axpby(1.0, data_.data(), -1.0, other.data(), data_.data(), data_.size());
  return *this;
}

RealVector& RealVector::operator*=(double s) {
  for (double& e : data_) e *= s;
  return *this;
}

RealVector combine(double alpha, const RealVector& x, double beta, const RealVector& y) {
  require_same_dim(x, y, "combine");
  std::vector<double> out(x.dim());
  kernels::active().axpby(alpha, x.data(), beta, y.data(), out.data(), out.size());
  return RealVector(RealVector::Unchecked{}, std::move(out));
}

RealVector operator+(const RealVector& a, const RealVector& b) { return combine(1.0, a, 1.0, b); }
RealVector operator-(const RealVector& a, const RealVector& b) { return combine(1.0, a, -1.0, b); }

RealVector operator-(const RealVector& a) {
  RealVector out = a;
  for (double& e : out.span()) e = -e;
  return out;
}

RealVector operator*(double s, const RealVector& a) {
  RealVector out = a;
  out *= s;
  return out;
}

double dot(const RealVector& a, const RealVector& b) {
  require_same_dim(a, b, "dot");
  return kernels::active().dot(a.data(), b.data(), a.dim());
}

double norm(const RealVector& a) {
  // Scaled to avoid overflow for large entries.
  const double scale = max_abs(a);
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double e : a.span()) {
    const double t = e / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double distance(const RealVector& a, const RealVector& b) { return norm(a - b); }

double max_abs(const RealVector& a) {
  double m = 0.0;
  for (double e : a.span()) {
    if (std::isnan(e)) return e;
    m = std::max(m, std::abs(e));
  }
  return m;
}

RealVector concat(const RealVector& x, const RealVector& z) {
  RealVector out = RealVector::zeros(x.dim() + z.dim());
  std::copy(x.span().begin(), x.span().end(), out.span().begin());
  std::copy(z.span().begin(), z.span().end(), out.span().begin() + static_cast<std::ptrdiff_t>(x.dim()));
  return out;
}

RealVector slice(const RealVector& v, std::size_t offset, std::size_t count) {
  if (offset + count > v.dim()) fail(ErrorKind::dimension_mismatch, "slice: range out of bounds");
  RealVector out = RealVector::zeros(count);
  auto first = v.span().begin() + static_cast<std::ptrdiff_t>(offset);
  std::copy(first, first + static_cast<std::ptrdiff_t>(count), out.span().begin());
  return out;
}

// DenseOperator ------------------------------------------------------------

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseOperator::DenseOperator(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    fail(ErrorKind::dimension_mismatch, "DenseOperator: entry count does not match shape");
  }
  if (rows == 0 || cols == 0) fail(ErrorKind::invalid_input, "DenseOperator: empty shape");
  for (double e : data_) {
    if (!std::isfinite(e)) fail(ErrorKind::invalid_input, "DenseOperator: non-finite entry");
  }
}

DenseOperator::DenseOperator(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> r;
  for (const auto& row : rows) r.emplace_back(row);
  *this = from_rows(r);
}

DenseOperator DenseOperator::identity(std::size_t n) {
  DenseOperator m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseOperator DenseOperator::zeros(std::size_t rows, std::size_t cols) { return DenseOperator(rows, cols); }

DenseOperator DenseOperator::diagonal(const RealVector& d) {
  DenseOperator m(d.dim(), d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) m(i, i) = d[i];
  return m;
}

DenseOperator DenseOperator::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) fail(ErrorKind::invalid_input, "DenseOperator: empty matrix");
  const std::size_t cols = rows.front().size();
  std::vector<double> data;
  data.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) fail(ErrorKind::dimension_mismatch, "DenseOperator: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return DenseOperator(rows.size(), cols, std::move(data));
}

DenseOperator DenseOperator::from_columns(const std::vector<RealVector>& columns) {
  if (columns.empty()) fail(ErrorKind::invalid_input, "DenseOperator: no columns");
  const std::size_t rows = columns.front().dim();
  DenseOperator m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].dim() != rows) fail(ErrorKind::dimension_mismatch, "DenseOperator: column sizes differ");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

DenseOperator DenseOperator::hstack(const DenseOperator& left, const DenseOperator& right) {
  if (left.rows() != right.rows()) fail(ErrorKind::dimension_mismatch, "hstack: row counts differ");
  DenseOperator m(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) m(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) m(r, left.cols() + c) = right(r, c);
  }
  return m;
}

RealVector DenseOperator::column(std::size_t c) const {
  RealVector v = RealVector::zeros(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

DenseOperator DenseOperator::transpose() const {
  DenseOperator t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool DenseOperator::is_identity() const noexcept {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1.0 : 0.0)) return false;
  return true;
}

RealVector apply(const DenseOperator& op, const RealVector& v) {
  if (v.dim() != op.cols()) {
    fail(ErrorKind::dimension_mismatch, "apply: operator has " + std::to_string(op.cols()) +
                                            " columns, vector has dimension " + std::to_string(v.dim()));
  }
  RealVector out = RealVector::zeros(op.rows());
  kernels::active().gemv(op.row_major().data(), op.rows(), op.cols(), v.data(), out.data());
  return out;
}

RealVector adjoint_apply(const DenseOperator& op, const RealVector& w) {
  if (w.dim() != op.rows()) {
    fail(ErrorKind::dimension_mismatch, "adjoint_apply: operator has " + std::to_string(op.rows()) +
                                            " rows, vector has dimension " + std::to_string(w.dim()));
  }
  RealVector out = RealVector::zeros(op.cols());
  kernels::active().gemv_t(op.row_major().data(), op.rows(), op.cols(), w.data(), out.data());
  return out;
}

DenseOperator operator*(const DenseOperator& a, const DenseOperator& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::dimension_mismatch, "operator product: inner dimensions differ");
  DenseOperator out(a.rows(), b.cols());
  const DenseOperator bt = b.transpose();
  const auto& k = kernels::active();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* arow = a.row_major().data() + r * a.cols();
    for (std::size_t c = 0; c < b.cols(); ++c) {
      out(r, c) = k.dot(arow, bt.row_major().data() + c * bt.cols(), a.cols());
    }
  }
  return out;
}

namespace {
DenseOperator elementwise(const DenseOperator& a, double sa, const DenseOperator& b, double sb) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorKind::dimension_mismatch, "operator sum: shapes differ");
  }
  std::vector<double> out(a.row_major().size());
  kernels::active().axpby(sa, a.row_major().data(), sb, b.row_major().data(), out.data(), out.size());
  return DenseOperator(a.rows(), a.cols(), std::move(out));
}
}  // namespace

DenseOperator operator+(const DenseOperator& a, const DenseOperator& b) { return elementwise(a, 1.0, b, 1.0); }
DenseOperator operator-(const DenseOperator& a, const DenseOperator& b) { return elementwise(a, 1.0, b, -1.0); }

DenseOperator operator*(double s, const DenseOperator& a) {
  std::vector<double> out = a.row_major();
  for (double& e : out) e *= s;
  return DenseOperator(a.rows(), a.cols(), std::move(out));
}

DenseOperator gram(const DenseOperator& op) {
  DenseOperator g = op.transpose() * op;
  // Exact symmetry; the two triangles can differ in the last bit otherwise.
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = r + 1; c < g.cols(); ++c) g(c, r) = g(r, c);
  return g;
}

double max_abs(const DenseOperator& m) {
  double out = 0.0;
  for (double e : m.row_major()) {
    if (std::isnan(e)) return e;
    out = std::max(out, std::abs(e));
  }
  return out;
}

bool is_symmetric(const DenseOperator& m, double tol) {
  if (!m.square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r + 1; c < m.cols(); ++c)
      if (std::abs(m(r, c) - m(c, r)) > tol) return false;
  return true;
}

// Eigen-decomposition ------------------------------------------------------

SymmetricEigen symmetric_eigen(const DenseOperator& m) {
  if (!m.square()) fail(ErrorKind::dimension_mismatch, "symmetric_eigen: matrix is not square");
  const double scale = std::max(1.0, max_abs(m));
  if (!is_symmetric(m, kSymmetryTol * scale)) {
    fail(ErrorKind::invalid_input, "symmetric_eigen: matrix is not symmetric");
  }
  const std::size_t n = m.rows();
  DenseOperator a = m;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) a(c, r) = a(r, c) = 0.5 * (m(r, c) + m(c, r));
  DenseOperator v = DenseOperator::identity(n);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      diag += a(p, p) * a(p, p);
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off == 0.0 || off <= 1e-34 * diag) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymmetricEigen out{RealVector::zeros(n), DenseOperator(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

double operator_norm(const DenseOperator& op) {
  const SymmetricEigen e = symmetric_eigen(gram(op));
  return std::sqrt(std::max(0.0, e.values[e.values.dim() - 1]));
}

DenseOperator psd_sqrt(const DenseOperator& m) {
  if (!m.square()) fail(ErrorKind::dimension_mismatch, "psd_sqrt: matrix is not square");
  if (!is_symmetric(m, kSymmetryTol)) fail(ErrorKind::invalid_input, "psd_sqrt: matrix is not symmetric");
  const SymmetricEigen e = symmetric_eigen(m);
  const std::size_t n = m.rows();
  RealVector roots = RealVector::zeros(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = e.values[k];
    if (lambda < -kPsdTol) {
      fail(ErrorKind::not_positive_semidefinite,
           "psd_sqrt: eigenvalue " + std::to_string(lambda) + " is negative");
    }
    roots[k] = std::sqrt(std::max(0.0, lambda));
  }
  DenseOperator s(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += e.vectors(r, k) * roots[k] * e.vectors(c, k);
      s(r, c) = s(c, r) = acc;
    }
  }
  return s;
}

double check_gram_invertible(const DenseOperator& op) {
  const SymmetricEigen e = symmetric_eigen(gram(op));
  const double lo = e.values[0];
  const double hi = e.values[e.values.dim() - 1];
  if (!(lo > 0.0) || hi / lo > kMaxGramCondition) {
    fail(ErrorKind::singular_gram, "L^T L is numerically singular (eigenvalues " + std::to_string(lo) +
                                       " .. " + std::to_string(hi) + ")");
  }
  return hi / lo;
}

// LU -----------------------------------------------------------------------

LuFactorization::LuFactorization(const DenseOperator& m) : n_(m.rows()), lu_(m.row_major()), perm_(n_) {
  if (!m.square()) fail(ErrorKind::dimension_mismatch, "LuFactorization: matrix is not square");
  std::iota(perm_.begin(), perm_.end(), 0);
  const double scale = std::max(max_abs(m), std::numeric_limits<double>::min());
  auto at = [&](std::size_t r, std::size_t c) -> double& { return lu_[r * n_ + c]; };
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n_; ++r)
      if (std::abs(at(r, k)) > std::abs(at(piv, k))) piv = r;
    if (std::abs(at(piv, k)) <= 1e-14 * scale) {
      fail(ErrorKind::singular_gram, "LuFactorization: matrix is numerically singular");
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n_; ++c) std::swap(at(k, c), at(piv, c));
      std::swap(perm_[k], perm_[piv]);
    }
    for (std::size_t r = k + 1; r < n_; ++r) {
      const double f = at(r, k) / at(k, k);
      at(r, k) = f;
      for (std::size_t c = k + 1; c < n_; ++c) at(r, c) -= f * at(k, c);
    }
  }
}

RealVector LuFactorization::solve(const RealVector& rhs) const {
  if (rhs.dim() != n_) fail(ErrorKind::dimension_mismatch, "LuFactorization::solve: rhs dimension");
  RealVector x = RealVector::zeros(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    double s = rhs[perm_[r]];
    for (std::size_t c = 0; c < r; ++c) s -= lu_[r * n_ + c] * x[c];
    x[r] = s;
  }
  for (std::size_t r = n_; r-- > 0;) {
    double s = x[r];
    for (std::size_t c = r + 1; c < n_; ++c) s -= lu_[r * n_ + c] * x[c];
    x[r] = s / lu_[r * n_ + r];
  }
  return x;
}

}  // namespace opsplit
