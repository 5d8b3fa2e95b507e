#pragma once

// Reproducible problem instances.
//
// Random instances draw from std::mt19937_64, whose output sequence is fixed
// by the C++ standard. Raw 64-bit words are mapped to doubles as
// (word >> 11) * 2^-53 and then affinely to [-1, 1); no standard
// distribution objects are used, so a seed produces bit-identical bundles on
// every conforming platform.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "opsplit/linalg.hpp"
#include "opsplit/prox.hpp"

namespace opsplit {

enum class ProblemForm {
  composite_l,  // minimize f(L y) + g(y), L: Y -> X
  composite_a,  // minimize f(x) + g(A x), A: X -> Y, |A| <= 1
  feasibility,  // find x in U n V, f = i_U, g = i_V
};

std::string to_string(ProblemForm form);
std::optional<ProblemForm> parse_problem_form(const std::string& name);

struct ProblemBundle {
  ProblemForm form;
  ProxFunction f;
  ProxFunction g;
  DenseOperator op;
  std::uint64_t seed = 0;
  // Suggested starting point, when the instance comes with one.
  std::optional<RealVector> start;
};

// Checks dimensions and the form's standing assumption (L^T L invertible,
// |A| <= 1, indicator pair); throws opsplit::Error otherwise.
void validate(const ProblemBundle& bundle);

// U = R (1,1), V = R x R_-, x0 = (alpha, beta) with alpha < 0 < beta <= -alpha.
ProblemBundle make_counterexample(double alpha, double beta);

enum class RandomFKind { quadratic, l1 };

// Quadratics f = 1/2 |x - c_f|^2_{Q_f} on X and g = 1/2 |y - c_g|^2_{Q_g} on Y
// with Q >= 0.1 Id. For composite_l, L is dim_x x dim_y rescaled to
// lambda_max(L^T L) = 1 (requires dim_x >= dim_y); for composite_a, A is
// dim_y x dim_x rescaled to |A| = 1. f_kind = l1 replaces f by a weighted
// l1 norm with weight in [0.5, 1.5).
ProblemBundle make_random_quadratic(std::uint64_t seed, std::size_t dim_x, std::size_t dim_y, ProblemForm form,
                                    RandomFKind f_kind = RandomFKind::quadratic);

// Two random subspaces of R^dim with the given dimensions (columns drawn
// uniformly, full rank), as indicator functions.
struct SubspacePair {
  ProxFunction u;
  ProxFunction v;
  DenseOperator u_basis;
  DenseOperator v_basis;
};
SubspacePair make_random_subspaces(std::uint64_t seed, std::size_t dim, std::size_t dim_u, std::size_t dim_v);

// Deterministic stream used by the generators, exposed for tests and tools.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed);
  // Uniform in [-1, 1).
  double symmetric();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  RealVector vector(std::size_t dim, double scale = 1.0);
  DenseOperator matrix(std::size_t rows, std::size_t cols, double scale = 1.0);

 private:
  double unit();
  std::mt19937_64 engine_;
};

}  // namespace opsplit
