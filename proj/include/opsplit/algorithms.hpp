#pragma once

// One-step transition maps and trace-producing runners for the splitting
// methods. All steps use unit prox parameters.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opsplit/linalg.hpp"
#include "opsplit/problems.hpp"
#include "opsplit/prox.hpp"
#include "opsplit/resolvent.hpp"

namespace opsplit {

using ProxOracle = std::function<RealVector(const RealVector&)>;

ProxOracle oracle(const ProxFunction& fn);
// x -> L (L^T L + dg)^{-1} L^T x. The resolvent is copied into the oracle.
ProxOracle dual_composition_oracle(const GeneralizedResolvent& res);

// A linear map with |A| <= 1 + 1e-10, checked on construction.
class Contraction {
 public:
  explicit Contraction(DenseOperator a);
  const DenseOperator& op() const noexcept { return a_; }
  double norm() const noexcept { return norm_; }

  static constexpr double kNormSlack = 1e-10;

 private:
  DenseOperator a_;
  double norm_;
};

// The metric projection onto a closed convex set, i.e. the prox of an
// indicator. Construction rejects non-indicator functions.
class Projector {
 public:
  explicit Projector(ProxFunction set);
  const ProxFunction& set() const noexcept { return set_; }
  RealVector operator()(const RealVector& x) const { return set_.prox(x); }

 private:
  ProxFunction set_;
};

// Douglas-Rachford / Peaceman-Rachford ---------------------------------------

struct DRState {
  RealVector x;
  RealVector y;  // prox_f(x)
};

struct DRStep {
  RealVector x_next;
  RealVector y;
};

// y = prox_f(x); x_next = x - y + prox_g(2y - x)
DRStep dr_step(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x);
// y = prox_f(x); x_next = y - prox_{g*}(2y - x)
DRStep dr_step_via_conjugate(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const RealVector& x);
// y = prox_f(x); x_next = 2 prox_g(2y - x) - (2y - x)
DRStep pr_step(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x);

// ADMM -----------------------------------------------------------------------

struct ADMMState {
  RealVector a;
  RealVector u;
  std::optional<RealVector> b;  // absent before the first step
};

// b+ = (L^T L + dg)^{-1} L^T (a - u); a+ = prox_f(L b+ + u); u+ = u + L b+ - a+
ADMMState admm_step(const GeneralizedResolvent& res, const ProxOracle& prox_f, const ADMMState& state);

struct ADMMIntermediateState {
  RealVector a;
  RealVector u;
  std::optional<RealVector> w;
  std::optional<RealVector> b;
};

// b+ as above; w+ = u + L b+ - a; a+ = prox_f(L b+ + w+); u+ = w+ + L b+ - a+
ADMMIntermediateState admm_intermediate_step(const GeneralizedResolvent& res, const ProxOracle& prox_f,
                                             const ADMMIntermediateState& state);

// Chambolle-Pock ---------------------------------------------------------------

struct CPState {
  RealVector u;  // in X
  RealVector v;  // in Y
};

// u+ = prox_f(u - A^T v); v+ = prox_{g*}(v + A (2 u+ - u))
CPState cp_step(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const Contraction& a, const CPState& state);
CPState cp_step(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const DenseOperator& a, const CPState& state);

// Projection methods ---------------------------------------------------------

struct DykstraState {
  RealVector x;
  std::optional<RealVector> y;  // absent before the first step
  RealVector p;
  RealVector q;

  static DykstraState start(const RealVector& x0);
};

// y+ = P_V(x + p); p+ = x + p - y+; x+ = P_U(y+ + q); q+ = y+ + q - x+
DykstraState dykstra_step(const Projector& pu, const Projector& pv, const DykstraState& state);

// P_U(P_V(x))
RealVector map_step(const Projector& pu, const Projector& pv, const RealVector& x);

// Forward-backward on (1/2 d_U^2, i_V) with unit step:
// P_V(x - grad(1/2 d_U^2)(x)), the forward step written as (1-t) x + t P_U x.
RealVector fb_feasibility_step(const Projector& pu, const Projector& pv, const RealVector& x);

// Runners --------------------------------------------------------------------

enum class Method { dr, pr, cp, admm, admm_int, dykstra, map, fb };

std::string to_string(Method m);
std::optional<Method> parse_method(const std::string& name);

struct PointState {
  RealVector x;
};

template <class State>
struct Trace {
  Method method;
  std::vector<State> states;     // states[0] is the start
  std::vector<double> residuals;  // residuals[k] measures the move from states[k] to states[k+1]
  bool stopped_early = false;
};

using AnyTrace = std::variant<Trace<DRState>, Trace<ADMMState>, Trace<ADMMIntermediateState>, Trace<CPState>,
                              Trace<DykstraState>, Trace<PointState>>;

struct StartState {
  std::optional<RealVector> x0;
  std::optional<RealVector> a0;
  std::optional<RealVector> u0;
  std::optional<RealVector> v0;
};

// Runs `iterations` steps of `method` on the bundle. With a stop tolerance the
// run ends as soon as a step's residual is <= stop_tol:
//   dr, pr, map, fb   |x+ - x|
//   cp                |(u+, v+) - (u, v)|
//   admm, admm-int    |a+ - a| + |u+ - u|
//   dykstra           |x+ - x| + |p+ - p| + |q+ - q|
// pr and admm-int warn (but run) when g is not strongly convex.
AnyTrace run(Method method, const ProblemBundle& problem, const StartState& start, std::size_t iterations,
             std::optional<double> stop_tol = std::nullopt);

// Typed runners used by run() and the equivalence harness.
Trace<DRState> run_dr(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x0, std::size_t iterations,
                      std::optional<double> stop_tol = std::nullopt);
Trace<DRState> run_pr(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x0, std::size_t iterations,
                      std::optional<double> stop_tol = std::nullopt);
Trace<ADMMState> run_admm(const GeneralizedResolvent& res, const ProxOracle& prox_f, ADMMState start,
                          std::size_t iterations, std::optional<double> stop_tol = std::nullopt);
Trace<ADMMIntermediateState> run_admm_intermediate(const GeneralizedResolvent& res, const ProxOracle& prox_f,
                                                   ADMMIntermediateState start, std::size_t iterations,
                                                   std::optional<double> stop_tol = std::nullopt);
Trace<CPState> run_cp(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const Contraction& a, CPState start,
                      std::size_t iterations, std::optional<double> stop_tol = std::nullopt);
Trace<DykstraState> run_dykstra(const Projector& pu, const Projector& pv, const RealVector& x0, std::size_t iterations,
                                std::optional<double> stop_tol = std::nullopt);
Trace<PointState> run_map(const Projector& pu, const Projector& pv, const RealVector& x0, std::size_t iterations,
                          std::optional<double> stop_tol = std::nullopt);
Trace<PointState> run_fb(const Projector& pu, const Projector& pv, const RealVector& x0, std::size_t iterations,
                         std::optional<double> stop_tol = std::nullopt);

}  // namespace opsplit
