#include <doctest.h>

#include <cmath>
#include <random>

#include "opsplit/error.hpp"
#include "opsplit/problems.hpp"
#include "opsplit/prox.hpp"

using namespace opsplit;

namespace {

void check_same(const ProblemBundle& a, const ProblemBundle& b) {
  CHECK(a.form == b.form);
  CHECK(a.op == b.op);
  CHECK(a.start == b.start);
  const auto qa = a.f.quadratic_form(), qb = b.f.quadratic_form();
  REQUIRE(qa.has_value() == qb.has_value());
  if (qa) {
    CHECK(qa->q == qb->q);
    CHECK(qa->linear == qb->linear);
    CHECK(qa->constant == qb->constant);
  }
  const auto ga = a.g.quadratic_form(), gb = b.g.quadratic_form();
  REQUIRE(ga.has_value());
  REQUIRE(gb.has_value());
  CHECK(ga->q == gb->q);
  CHECK(ga->linear == gb->linear);
  CHECK(a.f.describe() == b.f.describe());
}

double min_eigenvalue(const DenseOperator& q) { return symmetric_eigen(q).values[0]; }

}  // namespace

TEST_CASE("make_counterexample examples") {
  const ProblemBundle b = make_counterexample(-2, 1);
  CHECK(b.form == ProblemForm::feasibility);
  CHECK(b.start == RealVector{-2, 1});
  CHECK_NOTHROW(validate(b));
  CHECK(prox(b.f, RealVector{2, 0}) == RealVector{1, 1});
  CHECK(prox(b.g, RealVector{3, 4}) == RealVector{3, 0});
  CHECK(prox(b.g, RealVector{3, -4}) == RealVector{3, -4});

  CHECK_NOTHROW(make_counterexample(-1, 1));
  CHECK_THROWS_AS(make_counterexample(1, 1), Error);
  CHECK_THROWS_AS(make_counterexample(-1, 2), Error);
  CHECK_THROWS_AS(make_counterexample(-1, 0), Error);
  CHECK_THROWS_AS(make_counterexample(0, 0), Error);
  CHECK_THROWS_AS(make_counterexample(std::nan(""), 1), Error);
}

TEST_CASE("make_random_quadratic is deterministic") {
  check_same(make_random_quadratic(0, 1, 1, ProblemForm::composite_l),
             make_random_quadratic(0, 1, 1, ProblemForm::composite_l));
  check_same(make_random_quadratic(7, 4, 3, ProblemForm::composite_a),
             make_random_quadratic(7, 4, 3, ProblemForm::composite_a));
  check_same(make_random_quadratic(3, 3, 2, ProblemForm::composite_l, RandomFKind::l1),
             make_random_quadratic(3, 3, 2, ProblemForm::composite_l, RandomFKind::l1));
  CHECK_FALSE(make_random_quadratic(0, 3, 2, ProblemForm::composite_l).op ==
              make_random_quadratic(1, 3, 2, ProblemForm::composite_l).op);
}

TEST_CASE("make_random_quadratic satisfies the form preconditions") {
  const ProblemBundle l = make_random_quadratic(1, 3, 2, ProblemForm::composite_l);
  CHECK(l.op.rows() == 3);
  CHECK(l.op.cols() == 2);
  CHECK_NOTHROW(check_gram_invertible(l.op));
  CHECK(std::abs(operator_norm(l.op) - 1.0) <= 1e-12);

  const ProblemBundle a = make_random_quadratic(2, 2, 2, ProblemForm::composite_a);
  CHECK(operator_norm(a.op) <= 1.0 + 1e-12);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (ProblemForm form : {ProblemForm::composite_l, ProblemForm::composite_a}) {
      const ProblemBundle b = make_random_quadratic(seed, 4, 3, form);
      CHECK_NOTHROW(validate(b));
      CHECK(b.f.dim() == 4);
      CHECK(b.g.dim() == 3);
      CHECK(min_eigenvalue(b.f.quadratic_form()->q) >= 0.1 - 1e-12);
      CHECK(min_eigenvalue(b.g.quadratic_form()->q) >= 0.1 - 1e-12);
      CHECK(b.g.strongly_convex_modulus() >= 0.1 - 1e-12);
      REQUIRE(b.start.has_value());
      CHECK(b.start->dim() == 4);
    }
  }
}

TEST_CASE("make_random_quadratic with l1 f") {
  const ProblemBundle b = make_random_quadratic(5, 3, 3, ProblemForm::composite_a, RandomFKind::l1);
  CHECK_FALSE(b.f.quadratic_form().has_value());
  CHECK(b.f.strongly_convex_modulus() == 0.0);
  const double v = value(b.f, RealVector{1, 0, 0});
  CHECK(v >= 0.5);
  CHECK(v < 1.5);
}

TEST_CASE("make_random_quadratic rejects bad dimensions") {
  CHECK_THROWS_AS(make_random_quadratic(0, 0, 1, ProblemForm::composite_a), Error);
  CHECK_THROWS_AS(make_random_quadratic(0, 2, 3, ProblemForm::composite_l), Error);
  CHECK_THROWS_AS(make_random_quadratic(0, 2, 2, ProblemForm::feasibility), Error);
}

TEST_CASE("make_random_subspaces") {
  const SubspacePair a = make_random_subspaces(4, 4, 2, 3);
  const SubspacePair b = make_random_subspaces(4, 4, 2, 3);
  CHECK(a.u_basis == b.u_basis);
  CHECK(a.v_basis == b.v_basis);
  CHECK(a.u_basis.rows() == 4);
  CHECK(a.u_basis.cols() == 2);
  CHECK(a.v_basis.cols() == 3);
  CHECK(symmetric_eigen(a.u_basis.transpose() * a.u_basis).values[0] > 1e-6);
  // columns lie in their own subspace
  const RealVector col = a.v_basis.column(1);
  CHECK(max_abs(prox(a.v, col) - col) <= 1e-12);
  CHECK_THROWS_AS(make_random_subspaces(0, 3, 4, 1), Error);
  CHECK_THROWS_AS(make_random_subspaces(0, 3, 0, 1), Error);
}

TEST_CASE("validate rejects malformed bundles") {
  ProblemBundle b = make_random_quadratic(0, 2, 2, ProblemForm::composite_a);
  b.op = DenseOperator{{2, 0}, {0, 2}};
  CHECK_THROWS_AS(validate(b), Error);
  b = make_random_quadratic(0, 2, 1, ProblemForm::composite_l);
  b.op = DenseOperator{{0}, {0}};
  CHECK_THROWS_AS(validate(b), Error);
  b = make_counterexample(-2, 1);
  b.f = ProxFunction::half_squared_norm(2);
  CHECK_THROWS_AS(validate(b), Error);
  b = make_random_quadratic(0, 2, 2, ProblemForm::composite_a);
  b.start = RealVector{1, 2, 3};
  CHECK_THROWS_AS(validate(b), Error);
}

TEST_CASE("SeededStream maps raw mt19937_64 words") {
  SeededStream s(12345);
  std::mt19937_64 ref(12345);
  for (int i = 0; i < 1000; ++i) {
    const double u = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    CHECK(s.symmetric() == 2.0 * u - 1.0);
  }
  SeededStream t(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = t.uniform(0.5, 1.5);
    CHECK(x >= 0.5);
    CHECK(x < 1.5);
  }
  // the standard fixes the 10000th output of a default-seeded engine
  std::mt19937_64 def;
  def.discard(9999);
  CHECK(def() == 9981545732273789042ull);
}

TEST_CASE("problem form names round-trip") {
  for (ProblemForm f : {ProblemForm::composite_l, ProblemForm::composite_a, ProblemForm::feasibility}) {
    CHECK(parse_problem_form(to_string(f)) == f);
  }
  CHECK_FALSE(parse_problem_form("composite").has_value());
}
