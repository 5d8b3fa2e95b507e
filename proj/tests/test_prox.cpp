#include <doctest.h>

#include <cmath>

#include "opsplit/error.hpp"
#include "opsplit/prox.hpp"
#include "support.hpp"

using namespace opsplit;
using support::to_op;
using support::to_vec;

namespace {

double scalar_prox(const ProxFunction& f, double x) { return f.prox(RealVector{x})[0]; }

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("value examples") {
  CHECK(value(ProxFunction::zero(1), RealVector{5}) == 0.0);
  const ProxFunction lower_half = ProxFunction::indicator_box({-kInf, -kInf}, {kInf, 0.0});
  CHECK(value(lower_half, RealVector{-2, 1}) == kInf);
  CHECK(value(lower_half, RealVector{-2, -1}) == 0.0);
  CHECK(value(ProxFunction::indicator_halfspace(RealVector{0, 1}, 0.0), RealVector{-2, 1}) == kInf);
  CHECK(value(ProxFunction::l1(2, 1.0), RealVector{2, -3}) == 5.0);
}

TEST_CASE("prox examples") {
  CHECK(prox(ProxFunction::zero(1), RealVector{5}) == RealVector{5});
  CHECK(scalar_prox(ProxFunction::l1(1, 1.0), 2.0) == 1.0);
  CHECK(scalar_prox(ProxFunction::half_squared_norm(1), 2.0) == 1.0);
  const RealVector p = prox(ProxFunction::indicator_subspace(DenseOperator{{1}, {1}}), RealVector{-2, 0});
  CHECK(p[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("l1 prox matches the 1-D grid oracle") {
  truth::Rng rng(21);
  for (int t = 0; t < 5; ++t) {
    const double w = rng.uniform(0.5, 1.5);
    const double x = rng.uniform(-4, 4);
    const double ref = truth::grid_prox([w](double s) { return w * std::abs(s); }, x);
    CHECK(std::abs(scalar_prox(ProxFunction::l1(1, w), x) - ref) <= 1e-6);
  }
  const double ref = truth::grid_prox([](double s) { return std::abs(s); }, 2.0);
  CHECK(std::abs(ref - 1.0) <= 1e-6);
}

TEST_CASE("1-D prox of further kinds matches the grid oracle") {
  truth::Rng rng(22);
  for (int t = 0; t < 4; ++t) {
    const double q = rng.uniform(0.1, 3.0);
    const double c = rng.uniform(-2, 2);
    const double lo = rng.uniform(-2, 0);
    const double hi = rng.uniform(0, 2);
    const double x = rng.uniform(-4, 4);

    const ProxFunction quad = ProxFunction::quadratic(DenseOperator{{q}}, RealVector{c});
    CHECK(std::abs(scalar_prox(quad, x) - truth::grid_prox([&](double s) { return 0.5 * q * s * s + c * s; }, x)) <=
          1e-6);

    const ProxFunction box = ProxFunction::indicator_box({lo}, {hi});
    CHECK(std::abs(scalar_prox(box, x) -
                   truth::grid_prox([&](double s) { return (s < lo || s > hi) ? kInf : 0.0; }, x)) <= 1e-5);

    const ProxFunction dist = ProxFunction::half_squared_distance(box);
    auto d = [&](double s) { return s < lo ? lo - s : (s > hi ? s - hi : 0.0); };
    CHECK(std::abs(scalar_prox(dist, x) - truth::grid_prox([&](double s) { return 0.5 * d(s) * d(s); }, x)) <= 1e-6);

    const ProxFunction shifted = ProxFunction::l1(1, 1.0).translate(RealVector{c});
    CHECK(std::abs(scalar_prox(shifted, x) - truth::grid_prox([&](double s) { return std::abs(s - c); }, x)) <= 1e-6);
  }
}

TEST_CASE("conjugate examples") {
  CHECK(scalar_prox(ProxFunction::half_squared_norm(1).conjugate(), 2.0) == 1.0);
  CHECK(scalar_prox(ProxFunction::l1(1, 1.0).conjugate(), 2.0) == 1.0);
  CHECK(scalar_prox(ProxFunction::l1(1, 1.0).conjugate(), 0.25) == 0.25);
  CHECK(scalar_prox(ProxFunction::zero(1).conjugate(), 7.0) == 0.0);
}

TEST_CASE("reflect examples") {
  CHECK(scalar_prox(ProxFunction::l1(1, 1.0).reflect(), 2.0) == 1.0);
  CHECK(scalar_prox(ProxFunction::indicator_box({-kInf}, {0.0}).reflect(), -3.0) == 0.0);
  CHECK(scalar_prox(reflect(ProxFunction::zero(1)), 4.0) == 4.0);
}

TEST_CASE("reflected_resolvent examples") {
  CHECK(reflected_resolvent(ProxFunction::zero(1), RealVector{3}) == RealVector{3});
  CHECK(reflected_resolvent(ProxFunction::half_squared_norm(1), RealVector{2}) == RealVector{0});
  CHECK(reflected_resolvent(ProxFunction::l1(1, 1.0), RealVector{2}) == RealVector{0});
}

TEST_CASE("grad_half_sq_distance examples") {
  CHECK(grad_half_sq_distance(ProxFunction::indicator_box({-kInf, -kInf}, {kInf, kInf}), RealVector{3, -1}) ==
        RealVector{0, 0});
  const RealVector g = grad_half_sq_distance(ProxFunction::indicator_subspace(DenseOperator{{1}, {1}}), RealVector{0, 2});
  CHECK(g[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(grad_half_sq_distance(ProxFunction::indicator_point(RealVector{0}), RealVector{3}) == RealVector{3});
  CHECK_THROWS_AS(grad_half_sq_distance(ProxFunction::l1(1, 1.0), RealVector{3}), Error);
}

TEST_CASE("construction rejects invalid parameters") {
  CHECK_THROWS_AS(ProxFunction::quadratic(DenseOperator{{-1}}), Error);
  CHECK_THROWS_AS(ProxFunction::quadratic(DenseOperator{{1, 2}, {0, 1}}), Error);
  CHECK_THROWS_AS(ProxFunction::quadratic(DenseOperator{{1}}, RealVector{1, 2}), Error);
  CHECK_THROWS_AS(ProxFunction::l1(2, -1.0), Error);
  CHECK_THROWS_AS(ProxFunction::indicator_box({1.0}, {0.0}), Error);
  CHECK_THROWS_AS(ProxFunction::indicator_subspace(DenseOperator{{1, 2}, {2, 4}}), Error);
  CHECK_THROWS_AS(ProxFunction::half_squared_distance(ProxFunction::l1(1, 1.0)), Error);
  CHECK_THROWS_AS(ProxFunction::indicator_halfspace(RealVector{0, 0}, 1.0), Error);
  CHECK_THROWS_AS(ProxFunction::l1(2, 1.0).prox(RealVector{1}), Error);
}

TEST_CASE("moduli and flags") {
  const ProxFunction q = ProxFunction::quadratic(DenseOperator{{2, 0}, {0, 0.5}});
  CHECK(q.strongly_convex_modulus() == doctest::Approx(0.5));
  CHECK(q.smoothness() == doctest::Approx(2.0));
  CHECK(q.conjugate().strongly_convex_modulus() == doctest::Approx(0.5));
  CHECK(ProxFunction::l1(2, 1.0).strongly_convex_modulus() == 0.0);
  CHECK(ProxFunction::l1(2, 1.0).smoothness() == kInf);
  CHECK(ProxFunction::indicator_point(RealVector{1}).strongly_convex_modulus() == kInf);
  CHECK(ProxFunction::indicator_point(RealVector{1}).is_indicator());
  CHECK_FALSE(ProxFunction::zero(1).is_indicator());
  CHECK(ProxFunction::zero(1).conjugate().is_indicator());
  CHECK(ProxFunction::l1(3, 1.0).conjugate().is_indicator());
}

TEST_CASE("Moreau identity holds for every catalog member") {
  truth::Rng rng(23);
  for (std::size_t dim : {2u, 3u, 5u}) {
    for (const auto& [name, fn] : support::catalog(rng, dim)) {
      CAPTURE(name);
      const ProxFunction conj = conjugate(fn);
      for (int t = 0; t < 100; ++t) {
        const RealVector x = to_vec(rng.vector(dim, 5.0));
        CHECK(max_abs(prox(fn, x) + prox(conj, x) - x) <= 1e-12 * (1 + max_abs(x)));
      }
    }
  }
}

TEST_CASE("double conjugation reproduces the prox") {
  truth::Rng rng(24);
  for (const auto& [name, fn] : support::catalog(rng, 3)) {
    CAPTURE(name);
    const ProxFunction twice = fn.conjugate().conjugate();
    for (int t = 0; t < 100; ++t) {
      const RealVector x = to_vec(rng.vector(3, 5.0));
      CHECK(max_abs(prox(twice, x) - prox(fn, x)) <= 1e-12 * (1 + max_abs(x)));
    }
  }
}

TEST_CASE("prox is firmly nonexpansive") {
  truth::Rng rng(25);
  for (const auto& [name, fn] : support::catalog(rng, 3)) {
    CAPTURE(name);
    for (const ProxFunction& f : {fn, fn.conjugate()}) {
      for (int t = 0; t < 100; ++t) {
        const RealVector x = to_vec(rng.vector(3, 5.0));
        const RealVector y = to_vec(rng.vector(3, 5.0));
        const RealVector d = prox(f, x) - prox(f, y);
        CHECK(dot(d, d) <= dot(x - y, d) + 1e-10);
      }
    }
  }
}

TEST_CASE("prox minimizes the proximal objective") {
  truth::Rng rng(26);
  for (const auto& [name, fn] : support::catalog(rng, 3)) {
    CAPTURE(name);
    for (const ProxFunction& f : {fn, fn.conjugate()}) {
      for (int t = 0; t < 10; ++t) {
        const RealVector x = to_vec(rng.vector(3, 5.0));
        const RealVector p = prox(f, x);
        const auto at_p = f.try_value(p);
        if (!at_p) continue;
        REQUIRE(std::isfinite(*at_p));
        const double best = *at_p + 0.5 * dot(x - p, x - p);
        for (int s = 0; s < 50; ++s) {
          RealVector z = p + to_vec(rng.vector(3, s < 25 ? 0.1 : 3.0));
          const auto at_z = f.try_value(z);
          if (!at_z) continue;
          CHECK(best <= *at_z + 0.5 * dot(x - z, x - z) + 1e-9 * (1 + std::abs(best)));
        }
      }
    }
  }
}

TEST_CASE("Fenchel-Young equality at prox points") {
  truth::Rng rng(27);
  for (const auto& [name, fn] : support::catalog(rng, 3)) {
    CAPTURE(name);
    for (int t = 0; t < 50; ++t) {
      const RealVector x = to_vec(rng.vector(3, 5.0));
      const RealVector p = prox(fn, x);
      const auto fp = fn.try_value(p);
      const auto conj = fn.conjugate_value(x - p);
      REQUIRE(fp.has_value());
      REQUIRE(conj.has_value());
      CHECK(std::abs(*fp + *conj - dot(p, x - p)) <= 1e-9 * (1 + dot(x, x)));
    }
  }
}

TEST_CASE("conjugate value of a 1-D quadratic matches a grid supremum") {
  const double q = 1.7, c = -0.4, u = 1.3;
  const ProxFunction f = ProxFunction::quadratic(DenseOperator{{q}}, RealVector{c});
  const double xs = truth::grid_argmin([&](double x) { return -(u * x - 0.5 * q * x * x - c * x); }, 0.0);
  const double sup = u * xs - 0.5 * q * xs * xs - c * xs;
  CHECK(*f.conjugate_value(RealVector{u}) == doctest::Approx(sup).epsilon(1e-9));
  CHECK(*ProxFunction::l1(1, 1.0).conjugate_value(RealVector{0.5}) == 0.0);
  CHECK(*ProxFunction::l1(1, 1.0).conjugate_value(RealVector{1.5}) == kInf);
}

TEST_CASE("projections are idempotent") {
  truth::Rng rng(28);
  for (const auto& [name, fn] : support::catalog(rng, 4)) {
    if (!fn.is_indicator()) continue;
    CAPTURE(name);
    for (int t = 0; t < 100; ++t) {
      const RealVector p = prox(fn, to_vec(rng.vector(4, 5.0)));
      CHECK(max_abs(prox(fn, p) - p) <= 1e-12 * (1 + max_abs(p)));
    }
  }
}

TEST_CASE("separable pair acts blockwise") {
  const ProxFunction pair = ProxFunction::separable_pair(ProxFunction::l1(1, 1.0), ProxFunction::indicator_point(RealVector{0}));
  CHECK(pair.dim() == 2);
  CHECK(prox(pair, RealVector{2, 5}) == RealVector{1, 0});
  CHECK(value(pair, RealVector{-3, 0}) == 3.0);
  CHECK(value(pair, RealVector{-3, 1}) == kInf);
}

TEST_CASE("values outside closed forms are reported as unsupported") {
  const ProxFunction hsd = ProxFunction::half_squared_distance(ProxFunction::indicator_box({-1.0}, {1.0}));
  const ProxFunction conj = hsd.conjugate();
  CHECK(conj.try_value(RealVector{0.5}).has_value());
  CHECK(*conj.try_value(RealVector{0.5}) == doctest::Approx(0.5 + 0.125));
  CHECK(ProxFunction::l1(1, 1.0).describe().find("l1") != std::string::npos);
}
