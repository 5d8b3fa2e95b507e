#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opsplit/linalg.hpp"
#include "opsplit/prox.hpp"
#include "oracles.hpp"

namespace support {

using opsplit::DenseOperator;
using opsplit::ProxFunction;
using opsplit::RealVector;

inline DenseOperator to_op(const truth::Matrix& m) { return DenseOperator::from_rows(m); }
inline RealVector to_vec(const truth::Vector& v) { return RealVector(v); }
inline truth::Vector to_std(const RealVector& v) { return v.entries(); }

inline truth::Matrix to_std(const DenseOperator& m) {
  truth::Matrix out(m.rows(), truth::Vector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

// Random symmetric positive definite Q = G^T G / n + shift * Id.
inline DenseOperator random_spd(truth::Rng& rng, std::size_t n, double shift = 0.1) {
  const truth::Matrix g = rng.matrix(n, n);
  truth::Matrix q = truth::multiply(truth::transpose(g), g);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q[i][j] /= static_cast<double>(n);
    q[i][i] += shift;
  }
  return to_op(q);
}

struct Named {
  std::string name;
  ProxFunction fn;
};

// One member of every catalog kind on R^dim (dim >= 2), plus composites.
inline std::vector<Named> catalog(truth::Rng& rng, std::size_t dim) {
  std::vector<Named> out;
  const DenseOperator q = random_spd(rng, dim);
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    lo[i] = rng.uniform(-2.0, 0.0);
    hi[i] = rng.uniform(0.0, 2.0);
  }
  lo[0] = -opsplit::kInfinity;
  hi[dim - 1] = opsplit::kInfinity;
  const DenseOperator basis = to_op(rng.matrix(dim, dim - 1));
  const ProxFunction subspace = ProxFunction::indicator_subspace(basis);
  const ProxFunction l1 = ProxFunction::l1(dim, rng.uniform(0.5, 1.5));

  out.push_back({"zero", ProxFunction::zero(dim)});
  out.push_back({"quadratic", ProxFunction::quadratic(q, to_vec(rng.vector(dim)), rng.uniform(-1.0, 1.0))});
  out.push_back({"psd quadratic", ProxFunction::quadratic(to_op(truth::Matrix(dim, truth::Vector(dim, 0.5))),
                                                          to_vec(rng.vector(dim)))});
  out.push_back({"indicator-subspace", subspace});
  out.push_back({"indicator-affine", ProxFunction::indicator_affine(basis, to_vec(rng.vector(dim)))});
  out.push_back({"indicator-halfspace", ProxFunction::indicator_halfspace(to_vec(rng.vector(dim)), 0.3)});
  out.push_back({"indicator-box", ProxFunction::indicator_box(lo, hi)});
  out.push_back({"indicator-point", ProxFunction::indicator_point(to_vec(rng.vector(dim)))});
  out.push_back({"l1", l1});
  out.push_back({"half-squared-distance", ProxFunction::half_squared_distance(subspace)});
  out.push_back({"conjugate", l1.conjugate()});
  out.push_back({"reflection", ProxFunction::indicator_box(lo, hi).reflect()});
  out.push_back({"translation", l1.translate(to_vec(rng.vector(dim)))});
  out.push_back({"separable-pair", ProxFunction::separable_pair(ProxFunction::l1(1, 1.0),
                                                                ProxFunction::half_squared_norm(dim - 1))});
  return out;
}

}  // namespace support
