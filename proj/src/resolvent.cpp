#include "opsplit/resolvent.hpp"

#include <cmath>

#include "opsplit/error.hpp"

namespace opsplit {

std::string to_string(ResolventSolver solver) {
  switch (solver) {
    case ResolventSolver::quadratic_g: return "quadratic-g";
    case ResolventSolver::affine_indicator_g: return "affine-indicator-g";
    case ResolventSolver::unit_gram: return "unit-gram";
    case ResolventSolver::iterative_fallback: return "iterative-fallback";
  }
  return "unknown";
}

GeneralizedResolvent::GeneralizedResolvent(DenseOperator op, ProxFunction g)
    : op_(std::move(op)), g_(std::move(g)), gram_(gram(op_)) {
  if (g_.dim() != op_.cols()) {
    fail(ErrorKind::dimension_mismatch, "GeneralizedResolvent: g has dimension " + std::to_string(g_.dim()) +
                                            " but L has " + std::to_string(op_.cols()) + " columns");
  }
  gram_condition_ = check_gram_invertible(op_);
  const SymmetricEigen e = symmetric_eigen(gram_);
  gram_max_eig_ = e.values[e.values.dim() - 1];

  if ((quad_ = g_.quadratic_form())) {
    solver_ = ResolventSolver::quadratic_g;
    lu_.emplace(gram_ + quad_->q);
  } else if ((affine_ = g_.affine_set())) {
    solver_ = ResolventSolver::affine_indicator_g;
    if (affine_->basis) lu_.emplace(affine_->basis->transpose() * gram_ * *affine_->basis);
  } else if (gram_.is_identity()) {
    solver_ = ResolventSolver::unit_gram;
  } else {
    solver_ = ResolventSolver::iterative_fallback;
  }
}

RealVector GeneralizedResolvent::solve(const RealVector& r) const {
  if (r.dim() != dim_y()) {
    fail(ErrorKind::dimension_mismatch, "GeneralizedResolvent::solve: expected dimension " +
                                            std::to_string(dim_y()) + ", got " + std::to_string(r.dim()));
  }
  switch (solver_) {
    case ResolventSolver::quadratic_g:
      return lu_->solve(r - quad_->linear);
    case ResolventSolver::affine_indicator_g: {
      // b = o + B z with B^T G B z = B^T (r - G o)
      if (!affine_->basis) return affine_->offset;
      const DenseOperator& basis = *affine_->basis;
      const RealVector rhs = adjoint_apply(basis, r - apply(gram_, affine_->offset));
      return affine_->offset + apply(basis, lu_->solve(rhs));
    }
    case ResolventSolver::unit_gram:
      return g_.prox(r);
    case ResolventSolver::iterative_fallback:
      return solve_fallback(r);
  }
  return r;
}

// Proximal gradient on 1/2 <b, G b> - <r, b> + g(b) from b = 0.
RealVector GeneralizedResolvent::solve_fallback(const RealVector& r) const {
  const double step = 1.0 / gram_max_eig_;
  const double tol = kFallbackTol * (1.0 + norm(r));
  RealVector b = RealVector::zeros(dim_y());
  for (int k = 0; k < kFallbackMaxIter; ++k) {
    const RealVector grad = apply(gram_, b) - r;
    RealVector next = g_.prox(combine(1.0, b, -step, grad), step);
    const double gradient_map = distance(next, b) / step;
    b = std::move(next);
    if (!b.all_finite()) break;
    if (gradient_map <= tol) return b;
  }
  fail(ErrorKind::solver_failure, "GeneralizedResolvent: proximal-gradient inner solver did not reach "
                                  "the gradient-map tolerance within the iteration limit");
}

std::optional<double> GeneralizedResolvent::subgradient_residual(const RealVector& r, const RealVector& b) const {
  const RealVector s = r - apply(gram_, b);
  if (quad_) return distance(s, apply(quad_->q, b) + quad_->linear);
  if (affine_) {
    // dg(b) is the orthogonal complement of the direction space
    if (!affine_->basis) return 0.0;
    const DenseOperator& basis = *affine_->basis;
    const LuFactorization glu(gram(basis));
    return norm(apply(basis, glu.solve(adjoint_apply(basis, s))));
  }
  return std::nullopt;
}

RealVector solve(const GeneralizedResolvent& res, const RealVector& r) { return res.solve(r); }

RealVector prox_dual_composition(const GeneralizedResolvent& res, const RealVector& x) {
  return apply(res.op(), res.solve(adjoint_apply(res.op(), x)));
}

RealVector prox_composition_conjugate(const GeneralizedResolvent& res, const RealVector& x) {
  return x - prox_dual_composition(res, x);
}

}  // namespace opsplit
