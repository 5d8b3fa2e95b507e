#include "opsplit/algorithms.hpp"

#include <cmath>
#include <memory>

#include "opsplit/diagnostics.hpp"
#include "opsplit/error.hpp"

namespace opsplit {

ProxOracle oracle(const ProxFunction& fn) {
  return [fn](const RealVector& x) { return fn.prox(x); };
}

ProxOracle dual_composition_oracle(const GeneralizedResolvent& res) {
  auto shared = std::make_shared<const GeneralizedResolvent>(res);
  return [shared](const RealVector& x) { return prox_dual_composition(*shared, x); };
}

Contraction::Contraction(DenseOperator a) : a_(std::move(a)), norm_(operator_norm(a_)) {
  if (norm_ > 1.0 + kNormSlack) {
    fail(ErrorKind::norm_violation, "operator norm " + std::to_string(norm_) + " exceeds 1; rescale A first");
  }
}

Projector::Projector(ProxFunction set) : set_(std::move(set)) {
  if (!set_.is_indicator()) {
    fail(ErrorKind::invalid_input, "projection methods need indicator functions, got " + set_.describe());
  }
}

// Steps ------------------------------------------------------------------------

DRStep dr_step(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x) {
  RealVector y = prox_f(x);
  RealVector x_next = (x - y) + prox_g(combine(2.0, y, -1.0, x));
  return {std::move(x_next), std::move(y)};
}

DRStep dr_step_via_conjugate(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const RealVector& x) {
  RealVector y = prox_f(x);
  RealVector x_next = y - prox_g_conj(combine(2.0, y, -1.0, x));
  return {std::move(x_next), std::move(y)};
}

DRStep pr_step(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x) {
  RealVector y = prox_f(x);
  const RealVector reflected = combine(2.0, y, -1.0, x);
  RealVector x_next = combine(2.0, prox_g(reflected), -1.0, reflected);
  return {std::move(x_next), std::move(y)};
}

ADMMState admm_step(const GeneralizedResolvent& res, const ProxOracle& prox_f, const ADMMState& s) {
  const DenseOperator& l = res.op();
  RealVector b = res.solve(adjoint_apply(l, s.a - s.u));
  const RealVector lb = apply(l, b);
  RealVector a = prox_f(lb + s.u);
  RealVector u = (s.u + lb) - a;
  return {std::move(a), std::move(u), std::move(b)};
}

ADMMIntermediateState admm_intermediate_step(const GeneralizedResolvent& res, const ProxOracle& prox_f,
                                             const ADMMIntermediateState& s) {
  const DenseOperator& l = res.op();
  RealVector b = res.solve(adjoint_apply(l, s.a - s.u));
  const RealVector lb = apply(l, b);
  RealVector w = (s.u + lb) - s.a;
  RealVector a = prox_f(lb + w);
  RealVector u = (w + lb) - a;
  return {std::move(a), std::move(u), std::move(w), std::move(b)};
}

CPState cp_step(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const Contraction& a, const CPState& s) {
  RealVector u = prox_f(s.u - adjoint_apply(a.op(), s.v));
  RealVector v = prox_g_conj(s.v + apply(a.op(), combine(2.0, u, -1.0, s.u)));
  return {std::move(u), std::move(v)};
}

CPState cp_step(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const DenseOperator& a, const CPState& s) {
  return cp_step(prox_f, prox_g_conj, Contraction(a), s);
}

DykstraState DykstraState::start(const RealVector& x0) {
  return {x0, std::nullopt, RealVector::zeros(x0.dim()), RealVector::zeros(x0.dim())};
}

DykstraState dykstra_step(const Projector& pu, const Projector& pv, const DykstraState& s) {
  const RealVector xp = s.x + s.p;
  RealVector y = pv(xp);
  RealVector p = xp - y;
  const RealVector yq = y + s.q;
  RealVector x = pu(yq);
  RealVector q = yq - x;
  return {std::move(x), std::move(y), std::move(p), std::move(q)};
}

RealVector map_step(const Projector& pu, const Projector& pv, const RealVector& x) { return pu(pv(x)); }

RealVector fb_feasibility_step(const Projector& pu, const Projector& pv, const RealVector& x) {
  constexpr double kStep = 1.0;
  return pv(combine(1.0 - kStep, x, kStep, pu(x)));
}

// Runners ------------------------------------------------------------------------

std::string to_string(Method m) {
  switch (m) {
    case Method::dr: return "dr";
    case Method::pr: return "pr";
    case Method::cp: return "cp";
    case Method::admm: return "admm";
    case Method::admm_int: return "admm-int";
    case Method::dykstra: return "dykstra";
    case Method::map: return "map";
    case Method::fb: return "fb";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (Method m : {Method::dr, Method::pr, Method::cp, Method::admm, Method::admm_int, Method::dykstra, Method::map,
                   Method::fb}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

namespace {

template <class State, class Advance, class Residual>
Trace<State> iterate(Method method, State start, std::size_t iterations, std::optional<double> stop_tol,
                     Advance advance, Residual residual) {
  Trace<State> trace{method, {}, {}, false};
  trace.states.reserve(iterations + 1);
  trace.residuals.reserve(iterations);
  trace.states.push_back(std::move(start));
  for (std::size_t k = 0; k < iterations; ++k) {
    State next = advance(trace.states.back());
    const double r = residual(trace.states.back(), next);
    if (!std::isfinite(r)) {
      fail(ErrorKind::solver_failure, to_string(method) + ": iterate became non-finite at step " + std::to_string(k + 1));
    }
    trace.residuals.push_back(r);
    trace.states.push_back(std::move(next));
    if (stop_tol && r <= *stop_tol) {
      trace.stopped_early = k + 1 < iterations;
      break;
    }
  }
  return trace;
}

Trace<DRState> run_splitting(Method method, const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x0,
                             std::size_t iterations, std::optional<double> stop_tol) {
  const bool peaceman = method == Method::pr;
  auto advance = [&](const DRState& s) {
    const RealVector reflected = combine(2.0, s.y, -1.0, s.x);
    RealVector x = peaceman ? combine(2.0, prox_g(reflected), -1.0, reflected) : (s.x - s.y) + prox_g(reflected);
    RealVector y = prox_f(x);
    return DRState{std::move(x), std::move(y)};
  };
  auto residual = [](const DRState& a, const DRState& b) { return distance(a.x, b.x); };
  return iterate(method, DRState{x0, prox_f(x0)}, iterations, stop_tol, advance, residual);
}

}  // namespace

Trace<DRState> run_dr(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x0, std::size_t iterations,
                      std::optional<double> stop_tol) {
  return run_splitting(Method::dr, prox_f, prox_g, x0, iterations, stop_tol);
}

Trace<DRState> run_pr(const ProxOracle& prox_f, const ProxOracle& prox_g, const RealVector& x0, std::size_t iterations,
                      std::optional<double> stop_tol) {
  return run_splitting(Method::pr, prox_f, prox_g, x0, iterations, stop_tol);
}

Trace<ADMMState> run_admm(const GeneralizedResolvent& res, const ProxOracle& prox_f, ADMMState start,
                          std::size_t iterations, std::optional<double> stop_tol) {
  return iterate(
      Method::admm, std::move(start), iterations, stop_tol,
      [&](const ADMMState& s) { return admm_step(res, prox_f, s); },
      [](const ADMMState& a, const ADMMState& b) { return distance(a.a, b.a) + distance(a.u, b.u); });
}

Trace<ADMMIntermediateState> run_admm_intermediate(const GeneralizedResolvent& res, const ProxOracle& prox_f,
                                                   ADMMIntermediateState start, std::size_t iterations,
                                                   std::optional<double> stop_tol) {
  return iterate(
      Method::admm_int, std::move(start), iterations, stop_tol,
      [&](const ADMMIntermediateState& s) { return admm_intermediate_step(res, prox_f, s); },
      [](const ADMMIntermediateState& a, const ADMMIntermediateState& b) {
        return distance(a.a, b.a) + distance(a.u, b.u);
      });
}

Trace<CPState> run_cp(const ProxOracle& prox_f, const ProxOracle& prox_g_conj, const Contraction& a, CPState start,
                      std::size_t iterations, std::optional<double> stop_tol) {
  return iterate(
      Method::cp, std::move(start), iterations, stop_tol,
      [&](const CPState& s) { return cp_step(prox_f, prox_g_conj, a, s); },
      [](const CPState& s, const CPState& t) { return std::hypot(distance(s.u, t.u), distance(s.v, t.v)); });
}

Trace<DykstraState> run_dykstra(const Projector& pu, const Projector& pv, const RealVector& x0, std::size_t iterations,
                                std::optional<double> stop_tol) {
  return iterate(
      Method::dykstra, DykstraState::start(x0), iterations, stop_tol,
      [&](const DykstraState& s) { return dykstra_step(pu, pv, s); },
      [](const DykstraState& a, const DykstraState& b) {
        return distance(a.x, b.x) + distance(a.p, b.p) + distance(a.q, b.q);
      });
}

Trace<PointState> run_map(const Projector& pu, const Projector& pv, const RealVector& x0, std::size_t iterations,
                          std::optional<double> stop_tol) {
  return iterate(
      Method::map, PointState{x0}, iterations, stop_tol, [&](const PointState& s) { return PointState{map_step(pu, pv, s.x)}; },
      [](const PointState& a, const PointState& b) { return distance(a.x, b.x); });
}

Trace<PointState> run_fb(const Projector& pu, const Projector& pv, const RealVector& x0, std::size_t iterations,
                         std::optional<double> stop_tol) {
  return iterate(
      Method::fb, PointState{x0}, iterations, stop_tol,
      [&](const PointState& s) { return PointState{fb_feasibility_step(pu, pv, s.x)}; },
      [](const PointState& a, const PointState& b) { return distance(a.x, b.x); });
}

// Dispatch from a problem bundle ----------------------------------------------------

namespace {

const RealVector& require(const std::optional<RealVector>& v, const char* name, Method m) {
  if (!v) fail(ErrorKind::invalid_input, to_string(m) + " needs start field '" + name + "'");
  return *v;
}

void require_dim(const RealVector& v, std::size_t dim, const char* name) {
  if (v.dim() != dim) {
    fail(ErrorKind::dimension_mismatch, std::string("start field '") + name + "' has dimension " +
                                            std::to_string(v.dim()) + ", expected " + std::to_string(dim));
  }
}

void warn_if_not_strongly_convex(Method m, const ProxFunction& g) {
  if (!(g.strongly_convex_modulus() > 0.0)) {
    warn(to_string(m) + ": g has strong-convexity modulus 0; the iteration is well defined but convergence "
                        "is only guaranteed for uniformly convex g");
  }
}

}  // namespace

AnyTrace run(Method method, const ProblemBundle& problem, const StartState& start, std::size_t iterations,
             std::optional<double> stop_tol) {
  validate(problem);
  const bool identity_op = problem.op.is_identity();
  const bool l_form = problem.form == ProblemForm::composite_l || identity_op;

  switch (method) {
    case Method::dr:
    case Method::pr:
    case Method::admm:
    case Method::admm_int: {
      if (!l_form) {
        fail(ErrorKind::invalid_input, to_string(method) + " needs a composite-L problem (or an identity operator)");
      }
      const GeneralizedResolvent res(problem.op, problem.g);
      const ProxOracle prox_f = oracle(problem.f);
      if (method == Method::pr || method == Method::admm_int) warn_if_not_strongly_convex(method, problem.g);
      if (method == Method::dr || method == Method::pr) {
        const RealVector& x0 = require(start.x0, "x0", method);
        require_dim(x0, problem.f.dim(), "x0");
        const ProxOracle prox_g = dual_composition_oracle(res);
        return method == Method::dr ? run_dr(prox_f, prox_g, x0, iterations, stop_tol)
                                    : run_pr(prox_f, prox_g, x0, iterations, stop_tol);
      }
      const RealVector& a0 = require(start.a0, "a0", method);
      const RealVector& u0 = require(start.u0, "u0", method);
      require_dim(a0, problem.f.dim(), "a0");
      require_dim(u0, problem.f.dim(), "u0");
      if (method == Method::admm) return run_admm(res, prox_f, ADMMState{a0, u0, std::nullopt}, iterations, stop_tol);
      return run_admm_intermediate(res, prox_f, ADMMIntermediateState{a0, u0, std::nullopt, std::nullopt},
                                   iterations, stop_tol);
    }
    case Method::cp: {
      if (problem.form == ProblemForm::composite_l && !identity_op) {
        fail(ErrorKind::invalid_input, "cp needs a composite-A problem (or an identity operator)");
      }
      const RealVector& u0 = require(start.u0, "u0", method);
      const RealVector& v0 = require(start.v0, "v0", method);
      require_dim(u0, problem.f.dim(), "u0");
      require_dim(v0, problem.g.dim(), "v0");
      return run_cp(oracle(problem.f), oracle(problem.g.conjugate()), Contraction(problem.op), CPState{u0, v0},
                    iterations, stop_tol);
    }
    case Method::dykstra:
    case Method::map:
    case Method::fb: {
      const Projector pu(problem.f);
      const Projector pv(problem.g);
      if (problem.f.dim() != problem.g.dim()) fail(ErrorKind::dimension_mismatch, "U and V live in different spaces");
      const RealVector& x0 = require(start.x0, "x0", method);
      require_dim(x0, problem.f.dim(), "x0");
      if (method == Method::dykstra) return run_dykstra(pu, pv, x0, iterations, stop_tol);
      if (method == Method::map) return run_map(pu, pv, x0, iterations, stop_tol);
      return run_fb(pu, pv, x0, iterations, stop_tol);
    }
  }
  fail(ErrorKind::invalid_input, "unknown method");
}

}  // namespace opsplit
