#include "opsplit/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "opsplit/diagnostics.hpp"
#include "opsplit/error.hpp"
#include "opsplit/lifting.hpp"
#include "opsplit/problems.hpp"
#include "opsplit/resolvent.hpp"

namespace opsplit {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::dr_admm: return "dr-admm";
    case Theorem::admm_dr: return "admm-dr";
    case Theorem::pr_admm_int: return "pr-admm-int";
    case Theorem::admm_int_pr: return "admm-int-pr";
    case Theorem::cp_dr_id: return "cp-dr-id";
    case Theorem::cp_dr_lift: return "cp-dr-lift";
    case Theorem::dykstra_map_subspace: return "dykstra-map-subspace";
  }
  return "unknown";
}

std::optional<Theorem> parse_theorem(const std::string& name) {
  for (Theorem t : {Theorem::dr_admm, Theorem::admm_dr, Theorem::pr_admm_int, Theorem::admm_int_pr, Theorem::cp_dr_id,
                    Theorem::cp_dr_lift, Theorem::dykstra_map_subspace}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

namespace {

class ReportBuilder {
 public:
  ReportBuilder(Theorem t, Tolerance tol) {
    report_.theorem = t;
    report_.tolerance = tol;
  }

  void add(double discrepancy, double scale) {
    report_.discrepancies.push_back(discrepancy);
    report_.scales.push_back(scale);
    report_.max_discrepancy = std::max(report_.max_discrepancy, discrepancy);
    const double bound = report_.tolerance.abs + report_.tolerance.rel * scale;
    if (!(discrepancy <= bound)) report_.pass = false;
  }

  EquivalenceReport finish() {
    report_.iterations = report_.discrepancies.size();
    return std::move(report_);
  }

 private:
  EquivalenceReport report_;
};

void require_composite(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l) {
  if (f.dim() != l.rows() || g.dim() != l.cols()) {
    fail(ErrorKind::dimension_mismatch, "need f on R^rows(L) and g on R^cols(L)");
  }
}

void warn_modulus(const ProxFunction& g) {
  if (!(g.strongly_convex_modulus() > 0.0)) {
    warn("pr-admm-int: g has strong-convexity modulus 0; the correspondence is checked anyway");
  }
}

}  // namespace

std::pair<RealVector, RealVector> dr_to_admm_start(const RealVector& x0, const ProxOracle& prox_f) {
  RealVector a0 = prox_f(x0);
  RealVector u0 = x0 - a0;
  return {std::move(a0), std::move(u0)};
}

RealVector admm_to_dr_start(const DenseOperator& l, const RealVector& b1, const RealVector& u0) {
  return apply(l, b1) + u0;
}

EquivalenceReport verify_dr_admm(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                 const RealVector& x0, std::size_t iterations, Tolerance tol) {
  require_composite(f, g, l);
  const GeneralizedResolvent res(l, g);
  const ProxOracle prox_f = oracle(f);

  const auto dr = run_dr(prox_f, dual_composition_oracle(res), x0, iterations);
  auto [a0, u0] = dr_to_admm_start(x0, prox_f);
  const auto admm = run_admm(res, prox_f, ADMMState{std::move(a0), std::move(u0), std::nullopt}, iterations);

  ReportBuilder out(Theorem::dr_admm, tol);
  for (std::size_t n = 1; n <= iterations; ++n) {
    const DRState& d = dr.states[n];
    const ADMMState& cur = admm.states[n];
    const ADMMState& prev = admm.states[n - 1];
    const RealVector predicted_x = apply(l, *cur.b) + prev.u;
    out.add(distance(d.x, predicted_x) + distance(d.y, cur.a), norm(d.x) + norm(d.y));
  }
  return out.finish();
}

EquivalenceReport verify_admm_dr(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                 const RealVector& a0, const RealVector& u0, std::size_t iterations, Tolerance tol) {
  require_composite(f, g, l);
  const GeneralizedResolvent res(l, g);
  const ProxOracle prox_f = oracle(f);

  ReportBuilder out(Theorem::admm_dr, tol);
  if (iterations == 0) return out.finish();
  const auto admm = run_admm(res, prox_f, ADMMState{a0, u0, std::nullopt}, iterations);
  const RealVector x0 = admm_to_dr_start(l, *admm.states[1].b, u0);
  const auto dr = run_dr(prox_f, dual_composition_oracle(res), x0, iterations - 1);

  for (std::size_t n = 0; n < iterations; ++n) {
    const DRState& d = dr.states[n];
    const ADMMState& next = admm.states[n + 1];
    const RealVector predicted_x = apply(l, *next.b) + admm.states[n].u;
    out.add(distance(d.x, predicted_x) + distance(d.y, next.a), norm(d.x) + norm(d.y));
  }
  return out.finish();
}

EquivalenceReport verify_pr_admm_intermediate(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                              const RealVector& x0, std::size_t iterations, Tolerance tol) {
  require_composite(f, g, l);
  warn_modulus(g);
  const GeneralizedResolvent res(l, g);
  const ProxOracle prox_f = oracle(f);

  const auto pr = run_pr(prox_f, dual_composition_oracle(res), x0, iterations);
  auto [a0, u0] = dr_to_admm_start(x0, prox_f);
  const auto admm = run_admm_intermediate(
      res, prox_f, ADMMIntermediateState{std::move(a0), std::move(u0), std::nullopt, std::nullopt}, iterations);

  ReportBuilder out(Theorem::pr_admm_int, tol);
  for (std::size_t n = 1; n <= iterations; ++n) {
    const DRState& p = pr.states[n];
    const ADMMIntermediateState& cur = admm.states[n];
    const RealVector predicted_x = apply(l, *cur.b) + *cur.w;
    out.add(distance(p.x, predicted_x) + distance(p.y, cur.a), norm(p.x) + norm(p.y));
  }
  return out.finish();
}

EquivalenceReport verify_admm_intermediate_pr(const ProxFunction& f, const ProxFunction& g, const DenseOperator& l,
                                              const RealVector& a0, const RealVector& u0, std::size_t iterations,
                                              Tolerance tol) {
  require_composite(f, g, l);
  warn_modulus(g);
  const GeneralizedResolvent res(l, g);
  const ProxOracle prox_f = oracle(f);

  ReportBuilder out(Theorem::admm_int_pr, tol);
  if (iterations == 0) return out.finish();
  const auto admm =
      run_admm_intermediate(res, prox_f, ADMMIntermediateState{a0, u0, std::nullopt, std::nullopt}, iterations);
  const RealVector x0 = apply(l, *admm.states[1].b) + *admm.states[1].w;
  const auto pr = run_pr(prox_f, dual_composition_oracle(res), x0, iterations - 1);

  for (std::size_t n = 0; n < iterations; ++n) {
    const DRState& p = pr.states[n];
    const ADMMIntermediateState& next = admm.states[n + 1];
    const RealVector predicted_x = apply(l, *next.b) + *next.w;
    out.add(distance(p.x, predicted_x) + distance(p.y, next.a), norm(p.x) + norm(p.y));
  }
  return out.finish();
}

EquivalenceReport verify_cp_dr_identity_case(const ProxFunction& f, const ProxFunction& g, const RealVector& u0,
                                             const RealVector& v0, std::size_t iterations, Tolerance tol) {
  if (f.dim() != g.dim() || u0.dim() != f.dim() || v0.dim() != f.dim()) {
    fail(ErrorKind::dimension_mismatch, "cp-dr-id: f, g, u0 and v0 must share one dimension");
  }
  const ProxOracle prox_f = oracle(f);
  const auto dr = run_dr(prox_f, oracle(g), u0 - v0, iterations);
  const auto cp = run_cp(prox_f, oracle(g.conjugate()), Contraction(DenseOperator::identity(f.dim())),
                         CPState{u0, v0}, iterations);

  ReportBuilder out(Theorem::cp_dr_id, tol);
  for (std::size_t n = 1; n <= iterations; ++n) {
    const CPState& c = cp.states[n];
    const RealVector& x = dr.states[n].x;
    const RealVector& y_prev = dr.states[n - 1].y;
    out.add(distance(x, c.u - c.v) + distance(y_prev, c.u), norm(x) + norm(y_prev));
  }
  return out.finish();
}

EquivalenceReport verify_cp_lifted_dr(const ProxFunction& f, const ProxFunction& g, const DenseOperator& a,
                                      const RealVector& u0, const RealVector& v0, std::size_t iterations,
                                      Tolerance tol) {
  if (g.dim() != a.rows() || u0.dim() != a.cols() || v0.dim() != a.rows()) {
    fail(ErrorKind::dimension_mismatch, "cp-dr-lift: need u0 in the domain and g, v0 on the range of A");
  }
  const LiftedProblem lp = lift(a, f);
  const ProxOracle prox_g_conj = oracle(g.conjugate());
  const ProxOracle prox_ft = [&lp](const RealVector& xz) { return prox_f_tilde(lp, xz); };
  const ProxOracle prox_gb_conj = [&lp, &prox_g_conj](const RealVector& w) {
    return prox_gB_conjugate(lp, prox_g_conj, w);
  };
  const RealVector zero_z = RealVector::zeros(lp.dim_z());

  // DR on the lifted problem, conjugate form of the step.
  std::vector<DRState> dr;
  dr.reserve(iterations + 1);
  RealVector x = concat(u0, zero_z) - adjoint_apply(lp.b, v0);
  for (std::size_t n = 0; n <= iterations; ++n) {
    DRStep s = dr_step_via_conjugate(prox_ft, prox_gb_conj, x);
    dr.push_back(DRState{x, s.y});
    x = std::move(s.x_next);
  }
  const auto cp = run_cp(oracle(f), prox_g_conj, Contraction(a), CPState{u0, v0}, iterations);

  ReportBuilder out(Theorem::cp_dr_lift, tol);
  for (std::size_t n = 1; n <= iterations; ++n) {
    const CPState& c = cp.states[n];
    const RealVector lifted_u = concat(c.u, zero_z);
    const RealVector predicted_x = lifted_u - adjoint_apply(lp.b, c.v);
    const DRState& d = dr[n];
    const RealVector& y_prev = dr[n - 1].y;
    out.add(distance(d.x, predicted_x) + distance(y_prev, lifted_u), norm(d.x) + norm(y_prev));
  }
  return out.finish();
}

EquivalenceReport verify_dykstra_subspace_closed_form(const DenseOperator& u_basis, const DenseOperator& v_basis,
                                                      const RealVector& x0, std::size_t iterations, Tolerance tol) {
  if (u_basis.rows() != x0.dim() || v_basis.rows() != x0.dim()) {
    fail(ErrorKind::dimension_mismatch, "dykstra-map-subspace: bases and x0 must share the ambient dimension");
  }
  const Projector pu(ProxFunction::indicator_subspace(u_basis));
  const Projector pv(ProxFunction::indicator_subspace(v_basis));
  auto perp = [](const Projector& p, const RealVector& z) { return z - p(z); };

  const auto trace = run_dykstra(pu, pv, x0, iterations);

  ReportBuilder out(Theorem::dykstra_map_subspace, tol);
  RealVector sum_x = RealVector::zeros(x0.dim());
  RealVector sum_y = RealVector::zeros(x0.dim());
  for (std::size_t n = 0; n < iterations; ++n) {
    const DykstraState& cur = trace.states[n];
    const DykstraState& next = trace.states[n + 1];
    const RealVector& y = *next.y;  // y_n is produced by step n -> n+1
    sum_x += cur.x;
    sum_y += y;
    double d = distance(y, pv(cur.x));
    d += distance(next.p, perp(pv, sum_x));
    d += distance(next.x, pu(y));
    d += distance(next.q, perp(pu, sum_y));
    d += distance(next.x, map_step(pu, pv, cur.x));
    out.add(d, norm(cur.x) + norm(next.p) + norm(next.q) + norm(sum_x) + norm(sum_y));
  }
  return out.finish();
}

CounterexampleResult dykstra_map_counterexample(double alpha, double beta, std::size_t iterations) {
  const ProblemBundle bundle = make_counterexample(alpha, beta);
  const Projector pu(bundle.f);
  const Projector pv(bundle.g);
  const RealVector& x0 = *bundle.start;

  const auto map = run_map(pu, pv, x0, iterations);
  const auto dyk = run_dykstra(pu, pv, x0, iterations);

  CounterexampleResult r{map.states.back().x, dyk.states.back().x, 0.0, false};
  r.separation = distance(r.map_limit, r.dykstra_limit);
  r.distinct = r.separation > kDistinctThreshold;
  return r;
}

}  // namespace opsplit
