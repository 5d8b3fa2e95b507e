#include "opsplit/problems.hpp"

#include <cmath>

#include "opsplit/error.hpp"

namespace opsplit {

std::string to_string(ProblemForm form) {
  switch (form) {
    case ProblemForm::composite_l: return "composite-L";
    case ProblemForm::composite_a: return "composite-A";
    case ProblemForm::feasibility: return "feasibility";
  }
  return "unknown";
}

std::optional<ProblemForm> parse_problem_form(const std::string& name) {
  if (name == "composite-L") return ProblemForm::composite_l;
  if (name == "composite-A") return ProblemForm::composite_a;
  if (name == "feasibility") return ProblemForm::feasibility;
  return std::nullopt;
}

void validate(const ProblemBundle& b) {
  switch (b.form) {
    case ProblemForm::composite_l:
      if (b.f.dim() != b.op.rows() || b.g.dim() != b.op.cols()) {
        fail(ErrorKind::dimension_mismatch, "composite-L: need f on R^rows(L) and g on R^cols(L)");
      }
      check_gram_invertible(b.op);
      break;
    case ProblemForm::composite_a:
      if (b.f.dim() != b.op.cols() || b.g.dim() != b.op.rows()) {
        fail(ErrorKind::dimension_mismatch, "composite-A: need f on R^cols(A) and g on R^rows(A)");
      }
      if (operator_norm(b.op) > 1.0 + 1e-10) fail(ErrorKind::norm_violation, "composite-A: |A| exceeds 1");
      break;
    case ProblemForm::feasibility:
      if (!b.op.is_identity() || b.f.dim() != b.op.rows() || b.g.dim() != b.op.rows()) {
        fail(ErrorKind::dimension_mismatch, "feasibility: need two sets in one space and an identity operator");
      }
      if (!b.f.is_indicator() || !b.g.is_indicator()) {
        fail(ErrorKind::invalid_input, "feasibility: f and g must be indicator functions");
      }
      break;
  }
  if (b.start && b.start->dim() != b.op.rows() && b.start->dim() != b.op.cols()) {
    fail(ErrorKind::dimension_mismatch, "problem start point has the wrong dimension");
  }
}

ProblemBundle make_counterexample(double alpha, double beta) {
  if (!(alpha < 0.0) || !(beta > 0.0) || !(beta <= -alpha) || !std::isfinite(alpha)) {
    fail(ErrorKind::invalid_input, "counterexample: need alpha < 0 < beta <= -alpha");
  }
  ProblemBundle b{
      ProblemForm::feasibility,
      ProxFunction::indicator_subspace(DenseOperator{{1.0}, {1.0}}),
      ProxFunction::indicator_halfspace(RealVector{0.0, 1.0}, 0.0),
      DenseOperator::identity(2),
      0,
      RealVector{alpha, beta},
  };
  validate(b);
  return b;
}

// SeededStream ---------------------------------------------------------------

SeededStream::SeededStream(std::uint64_t seed) : engine_(seed) {}

double SeededStream::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededStream::symmetric() { return 2.0 * unit() - 1.0; }

double SeededStream::uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

RealVector SeededStream::vector(std::size_t dim, double scale) {
  RealVector v = RealVector::zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = scale * symmetric();
  return v;
}

DenseOperator SeededStream::matrix(std::size_t rows, std::size_t cols, double scale) {
  DenseOperator m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scale * symmetric();
  return m;
}

// Generators -----------------------------------------------------------------

namespace {

// 0.1 Id + G^T G / n, symmetric by construction.
DenseOperator random_spd(SeededStream& rng, std::size_t n) {
  const DenseOperator g = rng.matrix(n, n);
  DenseOperator q = (1.0 / static_cast<double>(n)) * gram(g);
  for (std::size_t i = 0; i < n; ++i) q(i, i) += 0.1;
  return q;
}

// Redraws until the Gram matrix is comfortably invertible.
DenseOperator random_full_rank(SeededStream& rng, std::size_t rows, std::size_t cols) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    DenseOperator m = rng.matrix(rows, cols);
    const SymmetricEigen e = symmetric_eigen(gram(m));
    const double lo = e.values[0];
    const double hi = e.values[cols - 1];
    if (lo > 0.0 && hi / lo < 1e6) return m;
  }
  fail(ErrorKind::solver_failure, "random generator could not draw a well-conditioned matrix");
}

}  // namespace

ProblemBundle make_random_quadratic(std::uint64_t seed, std::size_t dim_x, std::size_t dim_y, ProblemForm form,
                                    RandomFKind f_kind) {
  if (dim_x == 0 || dim_y == 0) fail(ErrorKind::invalid_input, "make_random_quadratic: dimensions must be >= 1");
  if (form == ProblemForm::feasibility) {
    fail(ErrorKind::invalid_input, "make_random_quadratic: feasibility instances are not quadratic");
  }
  if (form == ProblemForm::composite_l && dim_x < dim_y) {
    fail(ErrorKind::invalid_input, "make_random_quadratic: composite-L needs dim_x >= dim_y for L^T L invertible");
  }
  SeededStream rng(seed);

  DenseOperator op = form == ProblemForm::composite_l ? random_full_rank(rng, dim_x, dim_y)
                                                      : rng.matrix(dim_y, dim_x);
  const double op_norm = operator_norm(op);
  if (op_norm == 0.0) fail(ErrorKind::solver_failure, "make_random_quadratic: drew a zero operator");
  op = (1.0 / op_norm) * op;

  ProxFunction f = [&] {
    if (f_kind == RandomFKind::l1) return ProxFunction::l1(dim_x, rng.uniform(0.5, 1.5));
    const DenseOperator q = random_spd(rng, dim_x);
    return ProxFunction::centered_quadratic(q, rng.vector(dim_x, 2.0));
  }();
  const DenseOperator qg = random_spd(rng, dim_y);
  ProxFunction g = ProxFunction::centered_quadratic(qg, rng.vector(dim_y, 2.0));

  const std::size_t start_dim = dim_x;
  ProblemBundle b{form, std::move(f), std::move(g), std::move(op), seed, rng.vector(start_dim, 3.0)};
  validate(b);
  return b;
}

SubspacePair make_random_subspaces(std::uint64_t seed, std::size_t dim, std::size_t dim_u, std::size_t dim_v) {
  if (dim_u == 0 || dim_v == 0 || dim_u > dim || dim_v > dim) {
    fail(ErrorKind::invalid_input, "make_random_subspaces: need 1 <= subspace dimension <= ambient dimension");
  }
  SeededStream rng(seed);
  DenseOperator bu = random_full_rank(rng, dim, dim_u);
  DenseOperator bv = random_full_rank(rng, dim, dim_v);
  return SubspacePair{ProxFunction::indicator_subspace(bu), ProxFunction::indicator_subspace(bv), bu, bv};
}

}  // namespace opsplit
