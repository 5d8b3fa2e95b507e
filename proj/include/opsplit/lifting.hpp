#pragma once

// Embeds a contraction A: X -> Y into B = [A C]: X x Z -> Y with B B^T = Id,
// C = (Id - A A^T)^{1/2} and Z = Y. Chambolle-Pock on f + g o A then runs as
// Douglas-Rachford on f~ + g o B with f~(x, z) = f(x) + i_{0}(z).

#include <utility>

#include "opsplit/algorithms.hpp"
#include "opsplit/linalg.hpp"
#include "opsplit/prox.hpp"

namespace opsplit {

struct LiftedProblem {
  DenseOperator a;  // dim_y x dim_x
  DenseOperator c;  // dim_y x dim_y, symmetric PSD
  DenseOperator b;  // dim_y x (dim_x + dim_y), [A C]
  ProxFunction f_tilde;

  std::size_t dim_x() const noexcept { return a.cols(); }
  std::size_t dim_z() const noexcept { return c.cols(); }
};

inline constexpr double kLiftIdentityTol = 1e-9;

// Rejects |A| > 1 + 1e-10 (norm_violation).
LiftedProblem lift(const DenseOperator& a, const ProxFunction& f);

// max |B B^T - Id|
double lift_identity_defect(const LiftedProblem& lp);

// (prox_f x, 0)
std::pair<RealVector, RealVector> prox_f_tilde(const LiftedProblem& lp, const RealVector& x, const RealVector& z);
RealVector prox_f_tilde(const LiftedProblem& lp, const RealVector& xz);

// Prox of (g o B)^*: B^T prox_{g*}(B w), valid because B B^T = Id.
RealVector prox_gB_conjugate(const LiftedProblem& lp, const ProxOracle& g_conj, const RealVector& w);

}  // namespace opsplit
