#include "opsplit/prox.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opsplit/error.hpp"

namespace opsplit {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct ProxFunction::Node {
  ProxParams params;
  std::size_t dim = 0;
  double modulus = 0.0;
  double smoothness = kInfinity;
  bool indicator = false;
  // quadratic: (I + Q) factored for unit-step prox, Q factored when invertible
  std::optional<LuFactorization> shifted_lu;
  std::optional<LuFactorization> q_lu;
  // subspace / affine: B^T B
  std::optional<LuFactorization> gram_lu;
};

namespace {

double safe_inverse(double v) {
  if (v == 0.0) return kInfinity;
  if (std::isinf(v)) return 0.0;
  return 1.0 / v;
}

bool within(double dist, const RealVector& x) { return dist <= kMembershipTol * (1.0 + norm(x)); }

RealVector project_range(const DenseOperator& basis, const LuFactorization& gram_lu, const RealVector& x) {
  return apply(basis, gram_lu.solve(adjoint_apply(basis, x)));
}

RealVector soft_threshold(const RealVector& x, double t) {
  RealVector out = x;
  for (double& e : out.span()) {
    if (e > t) {
      e -= t;
    } else if (e < -t) {
      e += t;
    } else {
      e = 0.0;
    }
  }
  return out;
}

void require_dim(const ProxFunction& fn, const RealVector& x, const char* where) {
  if (x.dim() != fn.dim()) {
    fail(ErrorKind::dimension_mismatch, std::string(where) + ": " + fn.describe() + " lives in dimension " +
                                            std::to_string(fn.dim()) + ", point has dimension " +
                                            std::to_string(x.dim()));
  }
}

}  // namespace

std::string to_string(ProxKind kind) {
  switch (kind) {
    case ProxKind::zero: return "zero";
    case ProxKind::quadratic: return "quadratic";
    case ProxKind::indicator_subspace: return "indicator-subspace";
    case ProxKind::indicator_affine: return "indicator-affine";
    case ProxKind::indicator_halfspace: return "indicator-halfspace";
    case ProxKind::indicator_box: return "indicator-box";
    case ProxKind::indicator_point: return "indicator-point";
    case ProxKind::l1: return "l1";
    case ProxKind::half_squared_distance: return "half-squared-distance";
    case ProxKind::conjugate: return "conjugate";
    case ProxKind::reflection: return "reflection";
    case ProxKind::translation: return "translation";
    case ProxKind::separable_pair: return "separable-pair";
  }
  return "unknown";
}

// Construction -------------------------------------------------------------

ProxFunction ProxFunction::make(ProxParams params, std::size_t dim) {
  auto node = std::make_shared<Node>();
  node->dim = dim;

  std::visit(overloaded{
                 [&](const params::Zero&) {
                   node->modulus = 0.0;
                   node->smoothness = 0.0;
                 },
                 [&](const params::Quadratic& p) {
                   const SymmetricEigen e = symmetric_eigen(p.q);
                   const double lo = e.values[0];
                   const double hi = e.values[dim - 1];
                   if (lo < -kPsdTol * std::max(1.0, hi)) {
                     fail(ErrorKind::not_positive_semidefinite, "quadratic: Q is not positive semidefinite");
                   }
                   node->modulus = std::max(0.0, lo);
                   node->smoothness = std::max(0.0, hi);
                   node->shifted_lu.emplace(DenseOperator::identity(dim) + p.q);
                   if (lo > 1e-12 * std::max(1.0, hi)) node->q_lu.emplace(p.q);
                 },
                 [&](const params::Subspace& p) {
                   node->indicator = true;
                   node->gram_lu.emplace(gram(p.basis));
                 },
                 [&](const params::Affine& p) {
                   node->indicator = true;
                   node->gram_lu.emplace(gram(p.basis));
                 },
                 [&](const params::Halfspace&) { node->indicator = true; },
                 [&](const params::Box&) { node->indicator = true; },
                 [&](const params::Point&) {
                   node->indicator = true;
                   node->modulus = kInfinity;
                 },
                 [&](const params::L1&) {},
                 [&](const params::HalfSquaredDistance&) { node->smoothness = 1.0; },
                 [&](const params::Conjugate& p) {
                   node->modulus = safe_inverse(p.inner.smoothness());
                   node->smoothness = safe_inverse(p.inner.strongly_convex_modulus());
                   const ProxKind k = p.inner.kind();
                   node->indicator =
                       k == ProxKind::zero || k == ProxKind::l1 || k == ProxKind::indicator_subspace;
                 },
                 [&](const params::Reflection& p) {
                   node->modulus = p.inner.strongly_convex_modulus();
                   node->smoothness = p.inner.smoothness();
                   node->indicator = p.inner.is_indicator();
                 },
                 [&](const params::Translation& p) {
                   node->modulus = p.inner.strongly_convex_modulus();
                   node->smoothness = p.inner.smoothness();
                   node->indicator = p.inner.is_indicator();
                 },
                 [&](const params::SeparablePair& p) {
                   node->modulus = std::min(p.first.strongly_convex_modulus(), p.second.strongly_convex_modulus());
                   node->smoothness = std::max(p.first.smoothness(), p.second.smoothness());
                   node->indicator = p.first.is_indicator() && p.second.is_indicator();
                 },
             },
             params.data);
  node->params = std::move(params);
  return ProxFunction(std::move(node));
}

ProxFunction ProxFunction::zero(std::size_t dim) {
  if (dim == 0) fail(ErrorKind::invalid_input, "zero: dimension must be at least 1");
  return make({params::Zero{dim}}, dim);
}

ProxFunction ProxFunction::quadratic(DenseOperator q, RealVector linear, double constant) {
  if (!q.square() || q.rows() != linear.dim()) {
    fail(ErrorKind::dimension_mismatch, "quadratic: Q must be square and match the linear term");
  }
  if (!is_symmetric(q, kSymmetryTol * std::max(1.0, max_abs(q)))) {
    fail(ErrorKind::invalid_input, "quadratic: Q is not symmetric");
  }
  if (!std::isfinite(constant)) fail(ErrorKind::invalid_input, "quadratic: constant must be finite");
  const std::size_t n = q.rows();
  return make({params::Quadratic{std::move(q), std::move(linear), constant}}, n);
}

ProxFunction ProxFunction::quadratic(DenseOperator q) {
  const std::size_t n = q.rows();
  return quadratic(std::move(q), RealVector::zeros(n), 0.0);
}

ProxFunction ProxFunction::centered_quadratic(const DenseOperator& q, const RealVector& center) {
  const RealVector qc = apply(q, center);
  return quadratic(q, -qc, 0.5 * dot(center, qc));
}

ProxFunction ProxFunction::half_squared_norm(std::size_t dim) { return quadratic(DenseOperator::identity(dim)); }

ProxFunction ProxFunction::indicator_subspace(DenseOperator basis) {
  check_gram_invertible(basis);
  const std::size_t n = basis.rows();
  return make({params::Subspace{std::move(basis)}}, n);
}

ProxFunction ProxFunction::indicator_affine(DenseOperator basis, RealVector offset) {
  if (basis.rows() != offset.dim()) fail(ErrorKind::dimension_mismatch, "indicator_affine: offset dimension");
  check_gram_invertible(basis);
  const std::size_t n = basis.rows();
  return make({params::Affine{std::move(basis), std::move(offset)}}, n);
}

ProxFunction ProxFunction::indicator_halfspace(RealVector normal, double offset) {
  if (norm(normal) == 0.0) fail(ErrorKind::invalid_input, "indicator_halfspace: zero normal");
  if (!std::isfinite(offset)) fail(ErrorKind::invalid_input, "indicator_halfspace: offset must be finite");
  const std::size_t n = normal.dim();
  return make({params::Halfspace{std::move(normal), offset}}, n);
}

ProxFunction ProxFunction::indicator_box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size()) fail(ErrorKind::dimension_mismatch, "indicator_box: bound sizes");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (std::isnan(lo[i]) || std::isnan(hi[i]) || lo[i] > hi[i] || lo[i] == kInfinity || hi[i] == -kInfinity) {
      fail(ErrorKind::invalid_input, "indicator_box: empty or malformed interval");
    }
  }
  const std::size_t n = lo.size();
  return make({params::Box{std::move(lo), std::move(hi)}}, n);
}

ProxFunction ProxFunction::indicator_point(RealVector point) {
  const std::size_t n = point.dim();
  return make({params::Point{std::move(point)}}, n);
}

ProxFunction ProxFunction::l1(std::size_t dim, double weight) {
  if (dim == 0) fail(ErrorKind::invalid_input, "l1: dimension must be at least 1");
  if (!(weight >= 0.0) || !std::isfinite(weight)) fail(ErrorKind::invalid_input, "l1: weight must be >= 0");
  return make({params::L1{dim, weight}}, dim);
}

ProxFunction ProxFunction::half_squared_distance(const ProxFunction& set) {
  if (!set.is_indicator()) {
    fail(ErrorKind::invalid_input, "half_squared_distance: " + set.describe() + " is not an indicator");
  }
  return make({params::HalfSquaredDistance{set}}, set.dim());
}

ProxFunction ProxFunction::separable_pair(const ProxFunction& first, const ProxFunction& second) {
  return make({params::SeparablePair{first, second}}, first.dim() + second.dim());
}

ProxFunction ProxFunction::conjugate() const { return make({params::Conjugate{*this}}, dim()); }
ProxFunction ProxFunction::reflect() const { return make({params::Reflection{*this}}, dim()); }

ProxFunction ProxFunction::translate(const RealVector& shift) const {
  require_dim(*this, shift, "translate");
  return make({params::Translation{*this, shift}}, dim());
}

// Queries ------------------------------------------------------------------

ProxKind ProxFunction::kind() const { return static_cast<ProxKind>(node_->params.data.index()); }
std::size_t ProxFunction::dim() const { return node_->dim; }
const ProxParams& ProxFunction::params() const { return node_->params; }
double ProxFunction::strongly_convex_modulus() const { return node_->modulus; }
double ProxFunction::smoothness() const { return node_->smoothness; }
bool ProxFunction::is_indicator() const { return node_->indicator; }

std::string ProxFunction::describe() const {
  std::ostringstream os;
  os << to_string(kind()) << "(dim " << dim();
  std::visit(overloaded{
                 [&](const params::L1& p) { os << ", weight " << p.weight; },
                 [&](const params::HalfSquaredDistance& p) { os << ", " << p.set.describe(); },
                 [&](const params::Conjugate& p) { os << ", " << p.inner.describe(); },
                 [&](const params::Reflection& p) { os << ", " << p.inner.describe(); },
                 [&](const params::Translation& p) { os << ", " << p.inner.describe(); },
                 [&](const params::SeparablePair& p) { os << ", " << p.first.describe() << ", " << p.second.describe(); },
                 [&](const auto&) {},
             },
             node_->params.data);
  os << ")";
  return os.str();
}

// Proximal map -------------------------------------------------------------

RealVector ProxFunction::prox(const RealVector& x, double step) const {
  require_dim(*this, x, "prox");
  if (!(step > 0.0)) fail(ErrorKind::invalid_input, "prox: step must be positive");
  const Node& n = *node_;
  return std::visit(
      overloaded{
          [&](const params::Zero&) { return x; },
          [&](const params::Quadratic& p) {
            const RealVector rhs = combine(1.0, x, -step, p.linear);
            if (step == 1.0) return n.shifted_lu->solve(rhs);
            return LuFactorization(DenseOperator::identity(n.dim) + step * p.q).solve(rhs);
          },
          [&](const params::Subspace& p) { return project_range(p.basis, *n.gram_lu, x); },
          [&](const params::Affine& p) { return p.offset + project_range(p.basis, *n.gram_lu, x - p.offset); },
          [&](const params::Halfspace& p) {
            const double excess = dot(p.normal, x) - p.offset;
            if (excess <= 0.0) return x;
            return combine(1.0, x, -excess / dot(p.normal, p.normal), p.normal);
          },
          [&](const params::Box& p) {
            RealVector out = x;
            for (std::size_t i = 0; i < out.dim(); ++i) out[i] = std::clamp(out[i], p.lo[i], p.hi[i]);
            return out;
          },
          [&](const params::Point& p) { return p.point; },
          [&](const params::L1& p) { return soft_threshold(x, step * p.weight); },
          [&](const params::HalfSquaredDistance& p) {
            // x + t/(1+t) (P x - x)
            return combine(1.0 / (1.0 + step), x, step / (1.0 + step), p.set.prox(x));
          },
          [&](const params::Conjugate& p) {
            // Moreau: prox_{t f*}(x) = x - t prox_{f/t}(x/t)
            if (step == 1.0) return x - p.inner.prox(x);
            return combine(1.0, x, -step, p.inner.prox((1.0 / step) * x, 1.0 / step));
          },
          [&](const params::Reflection& p) { return -p.inner.prox(-x, step); },
          [&](const params::Translation& p) { return p.shift + p.inner.prox(x - p.shift, step); },
          [&](const params::SeparablePair& p) {
            const std::size_t d1 = p.first.dim();
            return concat(p.first.prox(slice(x, 0, d1), step), p.second.prox(slice(x, d1, x.dim() - d1), step));
          },
      },
      n.params.data);
}

// Values -------------------------------------------------------------------

std::optional<double> ProxFunction::try_value(const RealVector& x) const {
  require_dim(*this, x, "value");
  const Node& n = *node_;
  return std::visit(
      overloaded{
          [&](const params::Zero&) -> std::optional<double> { return 0.0; },
          [&](const params::Quadratic& p) -> std::optional<double> {
            return 0.5 * dot(x, apply(p.q, x)) + dot(p.linear, x) + p.constant;
          },
          [&](const params::Subspace& p) -> std::optional<double> {
            return within(distance(x, project_range(p.basis, *n.gram_lu, x)), x) ? 0.0 : kInfinity;
          },
          [&](const params::Affine& p) -> std::optional<double> {
            const RealVector d = x - p.offset;
            return within(distance(d, project_range(p.basis, *n.gram_lu, d)), x) ? 0.0 : kInfinity;
          },
          [&](const params::Halfspace& p) -> std::optional<double> {
            const double excess = (dot(p.normal, x) - p.offset) / norm(p.normal);
            return excess <= kMembershipTol * (1.0 + norm(x)) ? 0.0 : kInfinity;
          },
          [&](const params::Box& p) -> std::optional<double> {
            const double slack = kMembershipTol * (1.0 + norm(x));
            for (std::size_t i = 0; i < x.dim(); ++i) {
              if (x[i] < p.lo[i] - slack || x[i] > p.hi[i] + slack) return kInfinity;
            }
            return 0.0;
          },
          [&](const params::Point& p) -> std::optional<double> {
            return within(distance(x, p.point), x) ? 0.0 : kInfinity;
          },
          [&](const params::L1& p) -> std::optional<double> {
            double s = 0.0;
            for (double e : x.span()) s += std::abs(e);
            return p.weight * s;
          },
          [&](const params::HalfSquaredDistance& p) -> std::optional<double> {
            const double d = distance(x, p.set.prox(x));
            return 0.5 * d * d;
          },
          [&](const params::Conjugate& p) { return p.inner.conjugate_value(x); },
          [&](const params::Reflection& p) { return p.inner.try_value(-x); },
          [&](const params::Translation& p) { return p.inner.try_value(x - p.shift); },
          [&](const params::SeparablePair& p) -> std::optional<double> {
            const std::size_t d1 = p.first.dim();
            const auto a = p.first.try_value(slice(x, 0, d1));
            const auto b = p.second.try_value(slice(x, d1, x.dim() - d1));
            if (!a || !b) return std::nullopt;
            return *a + *b;
          },
      },
      n.params.data);
}

double ProxFunction::value(const RealVector& x) const {
  if (auto v = try_value(x)) return *v;
  fail(ErrorKind::unsupported_value, "value: no closed form for " + describe());
}

std::optional<double> ProxFunction::conjugate_value(const RealVector& u) const {
  require_dim(*this, u, "conjugate_value");
  const Node& n = *node_;
  return std::visit(
      overloaded{
          [&](const params::Zero&) -> std::optional<double> { return within(norm(u), u) ? 0.0 : kInfinity; },
          [&](const params::Quadratic& p) -> std::optional<double> {
            // (q_Q + <c,.> + k)^*(u) = q_{Q^-1}(u - c) - k
            const RealVector d = u - p.linear;
            if (n.q_lu) return 0.5 * dot(d, n.q_lu->solve(d)) - p.constant;
            // singular Q: finite only on c + range(Q), where Q^+ replaces Q^-1
            const SymmetricEigen e = symmetric_eigen(p.q);
            const double cutoff = 1e-12 * std::max(1.0, e.values[n.dim - 1]);
            double quad = 0.0;
            double off_range = 0.0;
            for (std::size_t i = 0; i < n.dim; ++i) {
              const double coef = dot(e.vectors.column(i), d);
              if (e.values[i] > cutoff) {
                quad += coef * coef / e.values[i];
              } else {
                off_range += coef * coef;
              }
            }
            if (!within(std::sqrt(off_range), u)) return kInfinity;
            return 0.5 * quad - p.constant;
          },
          [&](const params::Subspace& p) -> std::optional<double> {
            return within(norm(project_range(p.basis, *n.gram_lu, u)), u) ? 0.0 : kInfinity;
          },
          [&](const params::Affine& p) -> std::optional<double> {
            if (!within(norm(project_range(p.basis, *n.gram_lu, u)), u)) return kInfinity;
            return dot(u, p.offset);
          },
          [&](const params::Halfspace& p) -> std::optional<double> {
            // support function: finite only on the ray {t * normal : t >= 0}
            const double t = dot(u, p.normal) / dot(p.normal, p.normal);
            if (!within(distance(u, t * p.normal), u) || t < -kMembershipTol * (1.0 + norm(u))) return kInfinity;
            return std::max(t, 0.0) * p.offset;
          },
          [&](const params::Box& p) -> std::optional<double> {
            double s = 0.0;
            for (std::size_t i = 0; i < u.dim(); ++i) {
              if (u[i] > 0.0) {
                s += u[i] * p.hi[i];
              } else if (u[i] < 0.0) {
                s += u[i] * p.lo[i];
              }
            }
            return s;
          },
          [&](const params::Point& p) -> std::optional<double> { return dot(u, p.point); },
          [&](const params::L1& p) -> std::optional<double> {
            return max_abs(u) <= p.weight + kMembershipTol * (1.0 + norm(u)) ? 0.0 : kInfinity;
          },
          [&](const params::HalfSquaredDistance& p) -> std::optional<double> {
            // (1/2 d_C^2)^* = sigma_C + 1/2 |.|^2
            const auto support = p.set.conjugate_value(u);
            if (!support) return std::nullopt;
            return *support + 0.5 * dot(u, u);
          },
          [&](const params::Conjugate& p) { return p.inner.try_value(u); },
          [&](const params::Reflection& p) { return p.inner.conjugate_value(-u); },
          [&](const params::Translation& p) -> std::optional<double> {
            const auto inner = p.inner.conjugate_value(u);
            if (!inner) return std::nullopt;
            return *inner + dot(u, p.shift);
          },
          [&](const params::SeparablePair& p) -> std::optional<double> {
            const std::size_t d1 = p.first.dim();
            const auto a = p.first.conjugate_value(slice(u, 0, d1));
            const auto b = p.second.conjugate_value(slice(u, d1, u.dim() - d1));
            if (!a || !b) return std::nullopt;
            return *a + *b;
          },
      },
      n.params.data);
}

// Structure ----------------------------------------------------------------

std::optional<ProxFunction::QuadraticForm> ProxFunction::quadratic_form() const {
  return std::visit(
      overloaded{
          [&](const params::Zero& p) -> std::optional<QuadraticForm> {
            return QuadraticForm{DenseOperator::zeros(p.dim, p.dim), RealVector::zeros(p.dim), 0.0};
          },
          [&](const params::Quadratic& p) -> std::optional<QuadraticForm> {
            return QuadraticForm{p.q, p.linear, p.constant};
          },
          [&](const params::Reflection& p) -> std::optional<QuadraticForm> {
            auto f = p.inner.quadratic_form();
            if (!f) return std::nullopt;
            return QuadraticForm{f->q, -f->linear, f->constant};
          },
          [&](const params::Translation& p) -> std::optional<QuadraticForm> {
            // q(x - s) + <c, x - s> + k
            auto f = p.inner.quadratic_form();
            if (!f) return std::nullopt;
            const RealVector qs = apply(f->q, p.shift);
            return QuadraticForm{f->q, f->linear - qs, f->constant + 0.5 * dot(p.shift, qs) - dot(f->linear, p.shift)};
          },
          [&](const params::SeparablePair& p) -> std::optional<QuadraticForm> {
            auto a = p.first.quadratic_form();
            auto b = p.second.quadratic_form();
            if (!a || !b) return std::nullopt;
            const std::size_t d1 = a->q.rows();
            const std::size_t n = d1 + b->q.rows();
            DenseOperator q(n, n);
            for (std::size_t r = 0; r < d1; ++r)
              for (std::size_t c = 0; c < d1; ++c) q(r, c) = a->q(r, c);
            for (std::size_t r = 0; r < b->q.rows(); ++r)
              for (std::size_t c = 0; c < b->q.rows(); ++c) q(d1 + r, d1 + c) = b->q(r, c);
            return QuadraticForm{std::move(q), concat(a->linear, b->linear), a->constant + b->constant};
          },
          [&](const auto&) -> std::optional<QuadraticForm> { return std::nullopt; },
      },
      node_->params.data);
}

std::optional<ProxFunction::AffineSet> ProxFunction::affine_set() const {
  return std::visit(
      overloaded{
          [&](const params::Subspace& p) -> std::optional<AffineSet> {
            return AffineSet{RealVector::zeros(p.basis.rows()), p.basis};
          },
          [&](const params::Affine& p) -> std::optional<AffineSet> { return AffineSet{p.offset, p.basis}; },
          [&](const params::Point& p) -> std::optional<AffineSet> { return AffineSet{p.point, std::nullopt}; },
          [&](const params::Conjugate& p) -> std::optional<AffineSet> {
            // zero^* is the indicator of the origin
            if (p.inner.kind() == ProxKind::zero) return AffineSet{RealVector::zeros(p.inner.dim()), std::nullopt};
            return std::nullopt;
          },
          [&](const params::Reflection& p) -> std::optional<AffineSet> {
            auto s = p.inner.affine_set();
            if (!s) return std::nullopt;
            return AffineSet{-s->offset, s->basis};
          },
          [&](const params::Translation& p) -> std::optional<AffineSet> {
            auto s = p.inner.affine_set();
            if (!s) return std::nullopt;
            return AffineSet{s->offset + p.shift, s->basis};
          },
          [&](const params::SeparablePair& p) -> std::optional<AffineSet> {
            auto a = p.first.affine_set();
            auto b = p.second.affine_set();
            if (!a || !b) return std::nullopt;
            const std::size_t d1 = a->offset.dim();
            const std::size_t d2 = b->offset.dim();
            const std::size_t k1 = a->basis ? a->basis->cols() : 0;
            const std::size_t k2 = b->basis ? b->basis->cols() : 0;
            std::optional<DenseOperator> basis;
            if (k1 + k2 > 0) {
              basis.emplace(d1 + d2, k1 + k2);
              for (std::size_t r = 0; r < d1; ++r)
                for (std::size_t c = 0; c < k1; ++c) (*basis)(r, c) = (*a->basis)(r, c);
              for (std::size_t r = 0; r < d2; ++r)
                for (std::size_t c = 0; c < k2; ++c) (*basis)(d1 + r, k1 + c) = (*b->basis)(r, c);
            }
            return AffineSet{concat(a->offset, b->offset), std::move(basis)};
          },
          [&](const auto&) -> std::optional<AffineSet> { return std::nullopt; },
      },
      node_->params.data);
}

// Free functions -------------------------------------------------------------

double value(const ProxFunction& fn, const RealVector& x) { return fn.value(x); }
RealVector prox(const ProxFunction& fn, const RealVector& x) { return fn.prox(x); }
ProxFunction conjugate(const ProxFunction& fn) { return fn.conjugate(); }
ProxFunction reflect(const ProxFunction& fn) { return fn.reflect(); }

RealVector reflected_resolvent(const ProxFunction& fn, const RealVector& x) { return combine(2.0, fn.prox(x), -1.0, x); }

RealVector grad_half_sq_distance(const ProxFunction& set_projector, const RealVector& x) {
  if (!set_projector.is_indicator()) {
    fail(ErrorKind::invalid_input, "grad_half_sq_distance: " + set_projector.describe() + " is not an indicator");
  }
  return x - set_projector.prox(x);
}

}  // namespace opsplit
