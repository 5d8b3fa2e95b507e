#include <doctest.h>

#include <cmath>
#include <functional>
#include <tuple>

#include "opsplit/error.hpp"
#include "opsplit/lifting.hpp"
#include "support.hpp"

using namespace opsplit;
using support::to_op;
using support::to_std;
using support::to_vec;

namespace {

DenseOperator random_contraction(truth::Rng& rng, std::size_t rows, std::size_t cols) {
  DenseOperator a = to_op(rng.matrix(rows, cols));
  return (rng.uniform(0.3, 1.0) / operator_norm(a)) * a;
}

}  // namespace

TEST_CASE("lift examples") {
  const LiftedProblem id = lift(DenseOperator::identity(2), ProxFunction::zero(2));
  CHECK(max_abs(id.c) <= 1e-15);
  CHECK(max_abs(id.b - DenseOperator{{1, 0, 0, 0}, {0, 1, 0, 0}}) <= 1e-15);

  const LiftedProblem scalar = lift(DenseOperator{{0.6}}, ProxFunction::zero(1));
  CHECK(scalar.c(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(scalar.b(0, 0) == 0.6);
  CHECK(scalar.b(0, 1) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(lift_identity_defect(scalar) <= 1e-15);

  const LiftedProblem half = lift(DenseOperator{{0.5, 0}, {0, 0.5}}, ProxFunction::zero(2));
  CHECK(half.c(0, 0) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(half.c(1, 1) == doctest::Approx(std::sqrt(0.75)).epsilon(1e-15));
  CHECK(std::abs(half.c(0, 1)) <= 1e-15);
  CHECK(half.dim_x() == 2);
  CHECK(half.dim_z() == 2);
}

TEST_CASE("lift rejects operators with norm above one") {
  CHECK_THROWS_AS(lift(DenseOperator{{1.2}}, ProxFunction::zero(1)), Error);
  CHECK_THROWS_AS(lift(DenseOperator{{0.5, 0.5}}, ProxFunction::zero(1)), Error);
}

TEST_CASE("prox_f_tilde examples") {
  const LiftedProblem lp_l1 = lift(DenseOperator{{0.6}}, ProxFunction::l1(1, 1.0));
  auto [x, z] = prox_f_tilde(lp_l1, RealVector{2}, RealVector{5});
  CHECK(x == RealVector{1});
  CHECK(z == RealVector{0});
  const LiftedProblem lp_zero = lift(DenseOperator{{0.6}}, ProxFunction::zero(1));
  std::tie(x, z) = prox_f_tilde(lp_zero, RealVector{3}, RealVector{-7});
  CHECK(x == RealVector{3});
  CHECK(z == RealVector{0});
  const LiftedProblem lp_quad = lift(DenseOperator{{0.6}}, ProxFunction::half_squared_norm(1));
  CHECK(prox_f_tilde(lp_quad, RealVector{2, 1}) == RealVector{1, 0});
}

TEST_CASE("prox_gB_conjugate examples") {
  const LiftedProblem lp = lift(DenseOperator{{0.6}}, ProxFunction::zero(1));
  const RealVector p = prox_gB_conjugate(lp, oracle(ProxFunction::half_squared_norm(1).conjugate()), RealVector{1, 1});
  CHECK(p[0] == doctest::Approx(0.42).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.56).epsilon(1e-14));
  CHECK(prox_gB_conjugate(lp, oracle(ProxFunction::half_squared_norm(1).conjugate()), RealVector{0, 0}) ==
        RealVector{0, 0});
  CHECK(max_abs(prox_gB_conjugate(lp, oracle(ProxFunction::zero(1).conjugate()), RealVector{3, -2})) == 0.0);
}

TEST_CASE("B B^T = Id for random contractions") {
  truth::Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    const DenseOperator a = random_contraction(rng, 1 + t % 4, 1 + (t / 4) % 4);
    const LiftedProblem lp = lift(a, ProxFunction::zero(a.cols()));
    CHECK(lift_identity_defect(lp) <= kLiftIdentityTol);
    CHECK(max_abs(lp.b * lp.b.transpose() - DenseOperator::identity(a.rows())) <= 1e-9);
  }
  // a contraction with norm exactly one leaves C singular
  const LiftedProblem edge = lift(DenseOperator{{0.6, 0.8}}, ProxFunction::zero(2));
  CHECK(lift_identity_defect(edge) <= kLiftIdentityTol);
}

TEST_CASE("Moreau cross-check against a 2-D grid prox of g o B") {
  truth::Rng rng(52);
  for (int t = 0; t < 4; ++t) {
    const double a = rng.uniform(-0.95, 0.95);
    const LiftedProblem lp = lift(DenseOperator{{a}}, ProxFunction::zero(1));
    const double b0 = lp.b(0, 0), b1 = lp.b(0, 1);
    const RealVector w = to_vec(rng.vector(2, 3.0));
    const double q = rng.uniform(0.2, 2.0), c = rng.uniform(-1, 1), weight = rng.uniform(0.5, 1.5);

    struct Case {
      ProxFunction g;
      std::function<double(double)> value;
    };
    const std::vector<Case> cases = {
        {ProxFunction::quadratic(DenseOperator{{q}}, RealVector{c}), [&](double y) { return 0.5 * q * y * y + c * y; }},
        {ProxFunction::l1(1, weight), [&](double y) { return weight * std::abs(y); }},
    };
    for (const Case& k : cases) {
      CAPTURE(k.g.describe());
      const auto [px, pz] = truth::grid_argmin_2d(
          [&](double x, double z) {
            const double dx = x - w[0], dz = z - w[1];
            return k.value(b0 * x + b1 * z) + 0.5 * (dx * dx + dz * dz);
          },
          w[0], w[1]);
      const RealVector conj = prox_gB_conjugate(lp, oracle(k.g.conjugate()), w);
      CHECK(std::abs(conj[0] + px - w[0]) <= 1e-6);
      CHECK(std::abs(conj[1] + pz - w[1]) <= 1e-6);
    }
  }
}

TEST_CASE("Moreau cross-check against the closed-form prox of a quadratic g o B") {
  truth::Rng rng(53);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dy = 1 + t % 3, dx = 1 + (t / 3) % 3;
    const DenseOperator a = random_contraction(rng, dy, dx);
    const LiftedProblem lp = lift(a, ProxFunction::zero(dx));
    const DenseOperator q = support::random_spd(rng, dy);
    const auto c = rng.vector(dy);
    const ProxFunction g = ProxFunction::quadratic(q, to_vec(c));
    const auto w = rng.vector(dx + dy, 3.0);

    // prox of g o B at w solves (I + B^T Q B) p = w - B^T c
    const auto b = to_std(lp.b);
    const auto bt = truth::transpose(b);
    auto m = truth::multiply(bt, truth::multiply(to_std(q), b));
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] += 1.0;
    const auto btc = truth::multiply(bt, c);
    truth::Vector rhs(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) rhs[i] = w[i] - btc[i];
    const auto p = truth::solve(m, rhs);

    const RealVector conj = prox_gB_conjugate(lp, oracle(g.conjugate()), to_vec(w));
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(conj[i] + p[i] - w[i]) <= 1e-9);
  }
}

TEST_CASE("DR on the lifted problem reaches the minimizer of f + g o A with z = 0") {
  truth::Rng rng(54);
  for (int t = 0; t < 8; ++t) {
    const std::size_t dx = 1 + t % 3, dy = 1 + (t / 3) % 3;
    const DenseOperator a = random_contraction(rng, dy, dx);
    const DenseOperator qf = support::random_spd(rng, dx, 0.5), qg = support::random_spd(rng, dy, 0.5);
    const auto cf = rng.vector(dx), cg = rng.vector(dy);
    const ProxFunction f = ProxFunction::quadratic(qf, to_vec(cf));
    const ProxFunction g = ProxFunction::quadratic(qg, to_vec(cg));

    // (Qf + A^T Qg A) x = -(cf + A^T cg)
    const auto am = to_std(a);
    auto m = truth::multiply(truth::transpose(am), truth::multiply(to_std(qg), am));
    const auto qfm = to_std(qf);
    for (std::size_t i = 0; i < dx; ++i)
      for (std::size_t j = 0; j < dx; ++j) m[i][j] += qfm[i][j];
    const auto atc = truth::multiply(truth::transpose(am), cg);
    truth::Vector rhs(dx);
    for (std::size_t i = 0; i < dx; ++i) rhs[i] = -(cf[i] + atc[i]);
    const auto x_star = truth::solve(m, rhs);

    const LiftedProblem lp = lift(a, f);
    const ProxOracle pf = [&lp](const RealVector& v) { return prox_f_tilde(lp, v); };
    const ProxOracle pg_conj = oracle(g.conjugate());
    const ProxOracle pgb = [&](const RealVector& v) { return prox_gB_conjugate(lp, pg_conj, v); };
    RealVector x = RealVector::zeros(dx + dy);
    DRStep s = dr_step_via_conjugate(pf, pgb, x);
    for (int k = 0; k < 100000 && distance(s.x_next, x) > 1e-14; ++k) {
      x = s.x_next;
      s = dr_step_via_conjugate(pf, pgb, x);
    }
    for (std::size_t i = 0; i < dx; ++i) CHECK(std::abs(s.y[i] - x_star[i]) <= 1e-8);
    for (std::size_t i = 0; i < dy; ++i) CHECK(s.y[dx + i] == 0.0);
  }
}
