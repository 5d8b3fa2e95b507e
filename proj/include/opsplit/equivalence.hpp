#pragma once

// Starting-point maps and iterate-by-iterate verifiers for the
// correspondences between splitting methods:
//
//   dr-admm               DR on the dual  <->  ADMM
//   pr-admm-int           PR on the dual  <->  ADMM with intermediate multiplier update
//   cp-dr-id              CP with A = Id  <->  DR
//   cp-dr-lift            CP              <->  DR on the lifted problem
//   dykstra-map-subspace  Dykstra on two subspaces  <->  closed forms and MAP
//
// Each verifier runs both methods independently and records, per iterate, the
// distance between the two sides of the correspondence.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opsplit/algorithms.hpp"
#include "opsplit/linalg.hpp"
#include "opsplit/prox.hpp"

namespace opsplit {

enum class Theorem { dr_admm, admm_dr, pr_admm_int, admm_int_pr, cp_dr_id, cp_dr_lift, dykstra_map_subspace };

std::string to_string(Theorem t);
std::optional<Theorem> parse_theorem(const std::string& name);

// Iterate k passes when discrepancy_k <= abs + rel * scale_k, where scale_k is
// the norm of the iterates compared at k.
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-10;
};

struct EquivalenceReport {
  Theorem theorem;
  std::size_t iterations = 0;
  std::vector<double> discrepancies;
  std::vector<double> scales;
  Tolerance tolerance;
  double max_discrepancy = 0.0;
  bool pass = true;
};

// (a0, u0) = (prox_f x0, x0 - prox_f x0)
std::pair<RealVector, RealVector> dr_to_admm_start(const RealVector& x0, const ProxOracle& prox_f);
// x0 = L b1 + u0
RealVector admm_to_dr_start(const DenseOperator& l, const RealVector& b1, const RealVector& u0);

// Problem min f(L y) + g(y). DR uses prox_f and prox of (g^* o L^*)^*.
// discrepancy_n = |x_n - (L b_n + u_{n-1})| + |y_n - a_n|, n = 1..iterations
EquivalenceReport verify_dr_admm(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                 const RealVector& x0, std::size_t iterations, Tolerance tol = {});

// ADMM from arbitrary (a0, u0) against DR from L b1 + u0.
// discrepancy_n = |x_n - (L b_{n+1} + u_n)| + |y_n - a_{n+1}|, n = 0..iterations-1
EquivalenceReport verify_admm_dr(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                 const RealVector& a0, const RealVector& u0, std::size_t iterations,
                                 Tolerance tol = {});

// discrepancy_n = |x_n - (L b_n + w_n)| + |y_n - a_n|, n = 1..iterations.
// Warns when g is not strongly convex.
EquivalenceReport verify_pr_admm_intermediate(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                              const RealVector& x0, std::size_t iterations, Tolerance tol = {});

// ADMM-intermediate from (a0, u0) against PR from L b1 + w1.
// discrepancy_n = |x_n - (L b_{n+1} + w_{n+1})| + |y_n - a_{n+1}|, n = 0..iterations-1
EquivalenceReport verify_admm_intermediate_pr(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                              const RealVector& a0, const RealVector& u0, std::size_t iterations,
                                              Tolerance tol = {});

// CP with A = Id from (u0, v0) against DR from x0 = u0 - v0. The DR shadow
// lags CP's primal iterate by one step:
// discrepancy_n = |x_n - (u_n - v_n)| + |y_{n-1} - u_n|, n = 1..iterations
EquivalenceReport verify_cp_dr_identity_case(const ProxFunction& f, const ProxFunction& g, const RealVector& u0,
                                             const RealVector& v0, std::size_t iterations, Tolerance tol = {});

// CP on f + g o A against DR on f~ + g o B from (u0, 0) - B^T v0, using the
// conjugate form of the DR step with prox_{(g o B)^*}.
// discrepancy_n = |x_n - ((u_n, 0) - B^T v_n)| + |y_{n-1} - (u_n, 0)|, n = 1..iterations
EquivalenceReport verify_cp_lifted_dr(const ProxFunction& f, const ProxFunction& g, const DenseOperator& a,
                                      const RealVector& u0, const RealVector& v0, std::size_t iterations,
                                      Tolerance tol = {});

// Dykstra on subspaces U = range(u_basis), V = range(v_basis) from (x0, 0, 0).
// discrepancy_n sums the deviations from
//   y_n = P_V x_n,  p_{n+1} = P_{V-perp} sum_{k<=n} x_k,  x_{n+1} = P_U y_n,
//   q_{n+1} = P_{U-perp} sum_{k<=n} y_k,  x_{n+1} = P_U P_V x_n
// for n = 0..iterations-1.
EquivalenceReport verify_dykstra_subspace_closed_form(const DenseOperator& u_basis, const DenseOperator& v_basis,
                                                      const RealVector& x0, std::size_t iterations,
                                                      Tolerance tol = {});

struct CounterexampleResult {
  RealVector map_limit;
  RealVector dykstra_limit;
  double separation = 0.0;
  bool distinct = false;
};

inline constexpr double kDistinctThreshold = 1e-6;

// MAP and Dykstra from (alpha, beta) on U = R (1,1), V = R x R_-, n steps each.
CounterexampleResult dykstra_map_counterexample(double alpha, double beta, std::size_t iterations);

}  // namespace opsplit
