#pragma once

// The generalized resolvent (L^T L + dg)^{-1}: the ADMM b-update and the
// building block of the proximal map of (g^* o L^*)^*.

#include <optional>
#include <string>

#include "opsplit/linalg.hpp"
#include "opsplit/prox.hpp"

namespace opsplit {

enum class ResolventSolver {
  quadratic_g,         // (L^T L + Q) b = r - c
  affine_indicator_g,  // minimize over offset + range(basis)
  unit_gram,           // L^T L = Id, so b = prox_g(r)
  iterative_fallback,  // proximal gradient, step 1/lambda_max(L^T L)
};

std::string to_string(ResolventSolver solver);

// For L: Y -> X with L^T L invertible and g on Y, maps r in Y to the unique
// b with r in L^T L b + dg(b). Factorizations are computed at construction;
// the object is immutable afterwards.
class GeneralizedResolvent {
 public:
  GeneralizedResolvent(DenseOperator op, ProxFunction g);

  const DenseOperator& op() const noexcept { return op_; }
  const ProxFunction& g() const noexcept { return g_; }
  ResolventSolver solver() const noexcept { return solver_; }
  double gram_condition() const noexcept { return gram_condition_; }
  std::size_t dim_x() const noexcept { return op_.rows(); }
  std::size_t dim_y() const noexcept { return op_.cols(); }

  RealVector solve(const RealVector& r) const;

  // Distance from r - L^T L b to dg(b) when dg has a closed form
  // (quadratic and affine-indicator g); nullopt otherwise.
  std::optional<double> subgradient_residual(const RealVector& r, const RealVector& b) const;

  // Inner-solver limits for the iterative fallback.
  static constexpr double kFallbackTol = 1e-12;
  static constexpr int kFallbackMaxIter = 100000;

 private:
  RealVector solve_fallback(const RealVector& r) const;

  DenseOperator op_;
  ProxFunction g_;
  DenseOperator gram_;
  double gram_condition_ = 1.0;
  double gram_max_eig_ = 1.0;
  ResolventSolver solver_ = ResolventSolver::iterative_fallback;

  std::optional<ProxFunction::QuadraticForm> quad_;
  std::optional<ProxFunction::AffineSet> affine_;
  std::optional<LuFactorization> lu_;
};

RealVector solve(const GeneralizedResolvent& res, const RealVector& r);

// Prox of (g^* o L^*)^*:  L (L^T L + dg)^{-1} L^T x
RealVector prox_dual_composition(const GeneralizedResolvent& res, const RealVector& x);

// Prox of g^* o L^*:  x - L (L^T L + dg)^{-1} L^T x
RealVector prox_composition_conjugate(const GeneralizedResolvent& res, const RealVector& x);

}  // namespace opsplit
