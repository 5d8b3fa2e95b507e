#pragma once

// Convex functions with exact proximal maps, plus the calculus used to build
// conjugates, reflections, translations and separable sums from them.

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "opsplit/linalg.hpp"

namespace opsplit {

enum class ProxKind {
  zero,
  quadratic,
  indicator_subspace,
  indicator_affine,
  indicator_halfspace,
  indicator_box,
  indicator_point,
  l1,
  half_squared_distance,
  conjugate,
  reflection,
  translation,
  separable_pair,
};

std::string to_string(ProxKind kind);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative tolerance used when deciding set membership in value(); a point is
// in C when its distance to C is at most kMembershipTol * (1 + |x|).
inline constexpr double kMembershipTol = 1e-9;

struct ProxParams;

// An immutable handle to a proper lsc convex function on R^dim. Copies share
// the underlying node.
class ProxFunction {
 public:
  struct Node;

  static ProxFunction zero(std::size_t dim);
  // 1/2 <x, Q x> + <linear, x> + constant, Q symmetric PSD.
  static ProxFunction quadratic(DenseOperator q, RealVector linear, double constant = 0.0);
  static ProxFunction quadratic(DenseOperator q);
  // 1/2 <x - center, Q (x - center)>
  static ProxFunction centered_quadratic(const DenseOperator& q, const RealVector& center);
  static ProxFunction half_squared_norm(std::size_t dim);
  // Columns of `basis` span the subspace; they need not be orthonormal but
  // must be linearly independent.
  static ProxFunction indicator_subspace(DenseOperator basis);
  static ProxFunction indicator_affine(DenseOperator basis, RealVector offset);
  // {x : <normal, x> <= offset}
  static ProxFunction indicator_halfspace(RealVector normal, double offset);
  // lo <= x <= hi componentwise; infinite bounds allowed.
  static ProxFunction indicator_box(std::vector<double> lo, std::vector<double> hi);
  static ProxFunction indicator_point(RealVector point);
  static ProxFunction l1(std::size_t dim, double weight);
  static ProxFunction half_squared_distance(const ProxFunction& set);
  // (x, z) -> first(x) + second(z)
  static ProxFunction separable_pair(const ProxFunction& first, const ProxFunction& second);

  ProxKind kind() const;
  std::size_t dim() const;
  const ProxParams& params() const;

  // Largest m with f - (m/2)|.|^2 convex. +inf for a single point.
  double strongly_convex_modulus() const;
  // Lipschitz constant of the gradient; +inf for nonsmooth functions.
  double smoothness() const;
  bool is_indicator() const;

  // Extended-real value. Throws Error(unsupported_value) for conjugates
  // without a closed form.
  double value(const RealVector& x) const;
  std::optional<double> try_value(const RealVector& x) const;

  // argmin_y step * f(y) + 1/2 |x - y|^2. The catalog is used with step 1;
  // other steps serve inner solvers.
  RealVector prox(const RealVector& x, double step = 1.0) const;
  RealVector operator()(const RealVector& x) const { return prox(x); }

  // Value of the Fenchel conjugate, when a closed form exists.
  std::optional<double> conjugate_value(const RealVector& u) const;

  ProxFunction conjugate() const;
  // x -> f(-x)
  ProxFunction reflect() const;
  // x -> f(x - shift)
  ProxFunction translate(const RealVector& shift) const;

  // Coefficients (Q, linear, constant) when f is a quadratic polynomial.
  struct QuadraticForm {
    DenseOperator q;
    RealVector linear;
    double constant = 0.0;
  };
  std::optional<QuadraticForm> quadratic_form() const;

  // offset + range(basis) when f is the indicator of an affine set; a missing
  // basis means the single point {offset}.
  struct AffineSet {
    RealVector offset;
    std::optional<DenseOperator> basis;
  };
  std::optional<AffineSet> affine_set() const;

  std::string describe() const;

 private:
  explicit ProxFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static ProxFunction make(ProxParams params, std::size_t dim);

  std::shared_ptr<const Node> node_;
};

namespace params {
struct Zero {
  std::size_t dim;
};
struct Quadratic {
  DenseOperator q;
  RealVector linear;
  double constant;
};
struct Subspace {
  DenseOperator basis;
};
struct Affine {
  DenseOperator basis;
  RealVector offset;
};
struct Halfspace {
  RealVector normal;
  double offset;
};
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};
struct Point {
  RealVector point;
};
struct L1 {
  std::size_t dim;
  double weight;
};
struct HalfSquaredDistance {
  ProxFunction set;
};
struct Conjugate {
  ProxFunction inner;
};
struct Reflection {
  ProxFunction inner;
};
struct Translation {
  ProxFunction inner;
  RealVector shift;
};
struct SeparablePair {
  ProxFunction first;
  ProxFunction second;
};
}  // namespace params

struct ProxParams {
  std::variant<params::Zero, params::Quadratic, params::Subspace, params::Affine, params::Halfspace, params::Box,
               params::Point, params::L1, params::HalfSquaredDistance, params::Conjugate, params::Reflection,
               params::Translation, params::SeparablePair>
      data;
};

double value(const ProxFunction& fn, const RealVector& x);
RealVector prox(const ProxFunction& fn, const RealVector& x);
ProxFunction conjugate(const ProxFunction& fn);
ProxFunction reflect(const ProxFunction& fn);

// 2 prox(x) - x
RealVector reflected_resolvent(const ProxFunction& fn, const RealVector& x);

// Gradient of 1/2 d_C^2 at x, i.e. x - P_C x. `set_projector` must be an
// indicator.
RealVector grad_half_sq_distance(const ProxFunction& set_projector, const RealVector& x);

}  // namespace opsplit
