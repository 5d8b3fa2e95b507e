#include <doctest.h>

#include <cmath>
#include <functional>

#include "opsplit/error.hpp"
#include "opsplit/resolvent.hpp"
#include "support.hpp"

using namespace opsplit;
using support::to_op;
using support::to_std;
using support::to_vec;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double norm_std(const truth::Vector& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("solve examples") {
  const ProxFunction half_sq = ProxFunction::half_squared_norm(1);
  CHECK(solve(GeneralizedResolvent(DenseOperator{{1}}, half_sq), RealVector{4}) == RealVector{2});
  CHECK(solve(GeneralizedResolvent(DenseOperator{{1}, {1}}, half_sq), RealVector{3})[0] ==
        doctest::Approx(1.0).epsilon(1e-15));
  const GeneralizedResolvent pinned(DenseOperator{{1}}, ProxFunction::indicator_point(RealVector{0}));
  CHECK(solve(pinned, RealVector{-7.5}) == RealVector{0});
  CHECK(solve(pinned, RealVector{123}) == RealVector{0});
}

TEST_CASE("prox_dual_composition examples") {
  CHECK(prox_dual_composition(GeneralizedResolvent(DenseOperator{{1}}, ProxFunction::half_squared_norm(1)),
                              RealVector{2}) == RealVector{1});
  CHECK(prox_dual_composition(GeneralizedResolvent(DenseOperator{{1}}, ProxFunction::indicator_point(RealVector{0})),
                              RealVector{5}) == RealVector{0});
  const RealVector p =
      prox_dual_composition(GeneralizedResolvent(DenseOperator{{1}, {1}}, ProxFunction::zero(1)), RealVector{1, 3});
  CHECK(p[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("prox_composition_conjugate examples") {
  CHECK(prox_composition_conjugate(GeneralizedResolvent(DenseOperator{{1}}, ProxFunction::half_squared_norm(1)),
                                   RealVector{2}) == RealVector{1});
  CHECK(prox_composition_conjugate(
            GeneralizedResolvent(DenseOperator{{1}}, ProxFunction::indicator_point(RealVector{0})), RealVector{5}) ==
        RealVector{5});
  const RealVector p = prox_composition_conjugate(GeneralizedResolvent(DenseOperator{{1}, {1}}, ProxFunction::zero(1)),
                                                  RealVector{1, 3});
  CHECK(p[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("construction rejects singular Gram and mismatched g") {
  CHECK_THROWS_AS(GeneralizedResolvent(DenseOperator{{1, 1}, {1, 1}}, ProxFunction::zero(2)), Error);
  CHECK_THROWS_AS(GeneralizedResolvent(DenseOperator{{1}, {1}}, ProxFunction::zero(2)), Error);
}

TEST_CASE("solver selection") {
  truth::Rng rng(31);
  const DenseOperator l = to_op(rng.matrix(3, 2));
  CHECK(GeneralizedResolvent(l, ProxFunction::half_squared_norm(2)).solver() == ResolventSolver::quadratic_g);
  CHECK(GeneralizedResolvent(l, ProxFunction::zero(2)).solver() == ResolventSolver::quadratic_g);
  CHECK(GeneralizedResolvent(l, ProxFunction::indicator_subspace(DenseOperator{{1}, {2}})).solver() ==
        ResolventSolver::affine_indicator_g);
  CHECK(GeneralizedResolvent(l, ProxFunction::indicator_point(RealVector{1, 2})).solver() ==
        ResolventSolver::affine_indicator_g);
  CHECK(GeneralizedResolvent(DenseOperator::identity(2), ProxFunction::l1(2, 1.0)).solver() ==
        ResolventSolver::unit_gram);
  CHECK(GeneralizedResolvent(l, ProxFunction::l1(2, 1.0)).solver() == ResolventSolver::iterative_fallback);
}

TEST_CASE("Moreau pairing and the identity-operator case") {
  truth::Rng rng(32);
  for (const auto& [name, g] : support::catalog(rng, 3)) {
    CAPTURE(name);
    const GeneralizedResolvent res(DenseOperator::identity(3), g);
    for (int t = 0; t < 100; ++t) {
      const RealVector x = to_vec(rng.vector(3, 4.0));
      const RealVector p = prox_dual_composition(res, x);
      CHECK(max_abs(p + prox_composition_conjugate(res, x) - x) <= 1e-14 * (1 + max_abs(x)));
      CHECK(max_abs(p - prox(g, x)) <= 1e-10);
    }
  }
}

TEST_CASE("resolvent residual for quadratic and affine-indicator g") {
  truth::Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dy = 1 + t % 3;
    const std::size_t dx = dy + t % 2;
    const auto l = rng.matrix(dx, dy);
    const auto gram = truth::multiply(truth::transpose(l), l);
    const auto q = to_std(support::random_spd(rng, dy, 0.0));
    const auto c = rng.vector(dy);
    const auto r = rng.vector(dy, 3.0);

    const GeneralizedResolvent quad(to_op(l), ProxFunction::quadratic(to_op(q), to_vec(c)));
    const auto b = to_std(quad.solve(to_vec(r)));
    truth::Vector res(dy);
    const auto gb = truth::multiply(gram, b);
    const auto qb = truth::multiply(q, b);
    for (std::size_t i = 0; i < dy; ++i) res[i] = r[i] - gb[i] - (qb[i] + c[i]);
    CHECK(norm_std(res) <= 1e-9);
    CHECK(*quad.subgradient_residual(to_vec(r), to_vec(b)) <= 1e-9);

    if (dy >= 2) {
      const auto basis = rng.matrix(dy, dy - 1);
      const auto offset = rng.vector(dy);
      const GeneralizedResolvent aff(to_op(l), ProxFunction::indicator_affine(to_op(basis), to_vec(offset)));
      const auto ba = to_std(aff.solve(to_vec(r)));
      // feasibility: ba - offset lies in range(basis)
      truth::Vector shifted(dy);
      for (std::size_t i = 0; i < dy; ++i) shifted[i] = ba[i] - offset[i];
      const auto back = truth::project(basis, shifted);
      for (std::size_t i = 0; i < dy; ++i) CHECK(std::abs(back[i] - shifted[i]) <= 1e-9);
      // optimality: r - G b is normal to the set
      const auto gba = truth::multiply(gram, ba);
      truth::Vector g(dy);
      for (std::size_t i = 0; i < dy; ++i) g[i] = r[i] - gba[i];
      CHECK(norm_std(truth::project(basis, g)) <= 1e-9);
      CHECK(*aff.subgradient_residual(to_vec(r), to_vec(ba)) <= 1e-9);
    }
  }
}

TEST_CASE("1-D solve matches the grid minimizer") {
  truth::Rng rng(34);
  for (int t = 0; t < 6; ++t) {
    const std::size_t dx = 1 + t % 3;
    auto l = rng.matrix(dx, 1);
    double gram = 0.0;
    for (const auto& row : l) gram += row[0] * row[0];
    if (gram < 0.5) {
      // keep every minimizer inside the grid window around 0
      for (auto& row : l) row[0] /= std::sqrt(gram / 0.5);
      gram = 0.5;
    }
    const double r = rng.uniform(-4, 4);
    const double q = rng.uniform(0.1, 2.0);
    const double w = rng.uniform(0.5, 1.5);
    const double lo = rng.uniform(-1.5, 0.0);
    const double hi = rng.uniform(0.0, 1.5);

    struct Case {
      ProxFunction g;
      std::function<double(double)> value;
    };
    const std::vector<Case> cases = {
        {ProxFunction::quadratic(DenseOperator{{q}}, RealVector{0.3}), [&](double b) { return 0.5 * q * b * b + 0.3 * b; }},
        {ProxFunction::l1(1, w), [&](double b) { return w * std::abs(b); }},
        {ProxFunction::indicator_box({lo}, {hi}), [&](double b) { return (b < lo || b > hi) ? kInf : 0.0; }},
    };
    for (const Case& c : cases) {
      CAPTURE(c.g.describe());
      const double b = GeneralizedResolvent(to_op(l), c.g).solve(RealVector{r})[0];
      const double ref = truth::grid_argmin([&](double s) { return 0.5 * gram * s * s - r * s + c.value(s); }, 0.0);
      CHECK(std::abs(b - ref) <= 1e-5);
    }
  }
}

TEST_CASE("iterative fallback in two dimensions matches a 2-D grid search") {
  truth::Rng rng(35);
  const auto l = rng.matrix(3, 2);
  const auto gram = truth::multiply(truth::transpose(l), l);
  const truth::Vector r = {1.7, -0.9};
  const double w = 0.6;
  const GeneralizedResolvent res(to_op(l), ProxFunction::l1(2, w));
  REQUIRE(res.solver() == ResolventSolver::iterative_fallback);
  const RealVector b = res.solve(to_vec(r));
  const auto [bx, by] = truth::grid_argmin_2d(
      [&](double x, double y) {
        const double gx = gram[0][0] * x + gram[0][1] * y;
        const double gy = gram[1][0] * x + gram[1][1] * y;
        return 0.5 * (x * gx + y * gy) - r[0] * x - r[1] * y + w * (std::abs(x) + std::abs(y));
      },
      0.0, 0.0);
  CHECK(std::abs(b[0] - bx) <= 1e-5);
  CHECK(std::abs(b[1] - by) <= 1e-5);
  CHECK_FALSE(res.subgradient_residual(to_vec(r), b).has_value());
}
