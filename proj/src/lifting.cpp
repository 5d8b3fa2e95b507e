#include "opsplit/lifting.hpp"

#include <cmath>

#include "opsplit/error.hpp"

namespace opsplit {

LiftedProblem lift(const DenseOperator& a, const ProxFunction& f) {
  if (f.dim() != a.cols()) {
    fail(ErrorKind::dimension_mismatch, "lift: f must live on the domain of A");
  }
  const Contraction checked(a);
  const std::size_t m = a.rows();
  DenseOperator defect = DenseOperator::identity(m) - a * a.transpose();
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = r + 1; c < m; ++c) defect(c, r) = defect(r, c);
  DenseOperator c = psd_sqrt(defect);
  DenseOperator b = DenseOperator::hstack(a, c);
  ProxFunction f_tilde = ProxFunction::separable_pair(f, ProxFunction::indicator_point(RealVector::zeros(m)));
  return LiftedProblem{a, std::move(c), std::move(b), std::move(f_tilde)};
}

double lift_identity_defect(const LiftedProblem& lp) {
  return max_abs(lp.b * lp.b.transpose() - DenseOperator::identity(lp.b.rows()));
}

std::pair<RealVector, RealVector> prox_f_tilde(const LiftedProblem& lp, const RealVector& x, const RealVector& z) {
  if (x.dim() != lp.dim_x() || z.dim() != lp.dim_z()) fail(ErrorKind::dimension_mismatch, "prox_f_tilde: dimensions");
  const RealVector out = lp.f_tilde.prox(concat(x, z));
  return {slice(out, 0, lp.dim_x()), slice(out, lp.dim_x(), lp.dim_z())};
}

RealVector prox_f_tilde(const LiftedProblem& lp, const RealVector& xz) { return lp.f_tilde.prox(xz); }

RealVector prox_gB_conjugate(const LiftedProblem& lp, const ProxOracle& g_conj, const RealVector& w) {
  return adjoint_apply(lp.b, g_conj(apply(lp.b, w)));
}

}  // namespace opsplit
