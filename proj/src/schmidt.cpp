// Copyright 2026 The Twinscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinscope/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace twinscope::schmidt {

using linalg::Complex;

namespace {

// Schmidt data of sum_ij c(i, j) e_i (x) f_j in terms of coordinate vectors.
struct Expansion {
  std::vector<double> coefficients;
  std::vector<Vector> left;
  std::vector<Vector> right;
  std::vector<int> multiplicities;
};

// Orthonormal basis of span(block) built by Gram-Schmidt over the projected
// computational basis vectors, in index order.
std::vector<Vector> canonical_block_basis(const Matrix& block) {
  const Eigen::Index n = block.rows();
  const Matrix proj = block * block.adjoint();
  std::vector<Vector> basis;
  for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(basis.size()) < block.cols(); ++i) {
    Vector x = proj.col(i);
    for (const Vector& b : basis) x -= b.dot(x) * b;
    const double len = x.norm();
    if (len > 1e-6) basis.push_back(linalg::phase_normalized(x / len));
  }
  return basis;
}

Expansion expand(const Matrix& c, double tol) {
  Expansion out;
  const linalg::SvdResult s = linalg::svd(c);
  const Eigen::Index count = s.singular_values.size();
  const double s_max = count ? s.singular_values[0] : 0.0;
  if (s_max <= 0.0) return out;

  Eigen::Index rank = 0;
  while (rank < count && s.singular_values[rank] > tol * s_max) ++rank;

  Eigen::Index start = 0;
  while (start < rank) {
    Eigen::Index end = start + 1;
    while (end < rank && std::abs(s.singular_values[end] - s.singular_values[start]) <= tol * s_max) ++end;
    const auto size = end - start;
    out.multiplicities.push_back(static_cast<int>(size));

    std::vector<Vector> lefts;
    if (size == 1) {
      lefts.push_back(s.u.col(start));
    } else {
      lefts = canonical_block_basis(s.u.middleCols(start, size));
    }
    double mean = 0.0;
    for (Eigen::Index k = start; k < end; ++k) mean += s.singular_values[k];
    mean /= static_cast<double>(size);
    for (const Vector& l : lefts) {
      const double value = size == 1 ? s.singular_values[start] : mean;
      out.coefficients.push_back(value);
      out.left.push_back(l);
      out.right.push_back(c.transpose() * l.conjugate() / value);
    }
    start = end;
  }
  return out;
}

}  // namespace

Vector AntiunitaryMap::apply(const Vector& x) const { return unitary_part * x.conjugate(); }

Matrix AntiunitaryMap::squared() const { return unitary_part * unitary_part.conjugate(); }

PureSchmidt pure_schmidt(const Vector& phi, double tol) {
  if (phi.size() != 4) throw ValidationError("pure_schmidt: expected a 4-component state vector");
  if (!phi.allFinite()) throw ValidationError("pure_schmidt: non-finite amplitudes");
  if (std::abs(phi.norm() - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "pure_schmidt: state vector is not normalized (|phi| = " << phi.norm() << ")";
    throw ValidationError(msg.str());
  }
  Matrix amplitudes(2, 2);
  amplitudes << phi[0], phi[1], phi[2], phi[3];

  Expansion e = expand(amplitudes, tol);
  PureSchmidt out;
  out.coefficients = std::move(e.coefficients);
  out.left = std::move(e.left);
  out.right = std::move(e.right);
  out.multiplicities = std::move(e.multiplicities);
  out.schmidt_rank = static_cast<int>(out.coefficients.size());
  return out;
}

AntiunitaryMap correlation_operator(const PureSchmidt& ps) {
  if (ps.schmidt_rank == 0) throw ValidationError("correlation_operator: empty Schmidt expansion");
  AntiunitaryMap map;
  map.unitary_part = Matrix::Zero(2, 2);
  for (std::size_t k = 0; k < ps.left.size(); ++k)
    map.unitary_part += ps.right[k] * ps.left[k].transpose();
  map.partial = ps.schmidt_rank < 2;
  return map;
}

RangeProjector range_projector(const Matrix& positive, double tol) {
  const linalg::EigenDecomposition eig = linalg::eigh(positive, tol);
  const double top = std::max(std::abs(eig.values[0]), 0.0);
  RangeProjector out;
  out.projector = Matrix::Zero(positive.rows(), positive.cols());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (top > 0.0 && eig.values[k] > tol * top) out.projector += linalg::projector(eig.vectors.col(k));
  out.complement = linalg::identity(positive.rows()) - out.projector;
  return out;
}

Matrix pure_twin_partner(const Matrix& a1, const Vector& phi, double tol) {
  if (a1.rows() != 2 || a1.cols() != 2) throw ValidationError("pure_twin_partner: a1 must be 2x2");
  if (!linalg::check_hermitian(a1, tol).passed()) throw ValidationError("pure_twin_partner: a1 is not Hermitian");

  const PureSchmidt ps = pure_schmidt(phi, tol);
  const Matrix rho1 = linalg::partial_trace(linalg::projector(phi), 1);
  const double commutator = (a1 * rho1 - rho1 * a1).norm();
  if (commutator > tol * std::max(1.0, a1.norm())) {
    std::ostringstream msg;
    msg << "pure_twin_partner: a1 does not commute with the reduced state (|[a1, rho1]|_HS = "
        << commutator << ", tolerance " << tol << ")";
    throw ValidationError(msg.str());
  }
  // U_a a1 U_a^{-1} y = W conj(a1 W^T conj(y)) = W conj(a1) W^dagger y, and for
  // rank one W is already the partial isometry onto R(rho_2), so the Q_2 factor
  // is built in.
  const AntiunitaryMap ua = correlation_operator(ps);
  const Matrix a2 = ua.unitary_part * a1.conjugate() * ua.unitary_part.adjoint();
  return 0.5 * (a2 + a2.adjoint());
}

OperatorSchmidt operator_schmidt(const Matrix& rho, double tol) {
  if (rho.rows() != 4 || rho.cols() != 4) throw ValidationError("operator_schmidt: expected a 4x4 operator");
  if (!rho.allFinite()) throw ValidationError("operator_schmidt: non-finite entries");
  const double norm = linalg::hs_norm(rho);
  if (norm == 0.0) throw ValidationError("operator_schmidt: zero operator has no normalized expansion");
  if (!linalg::check_hermitian(rho, tol * norm).passed())
    throw ValidationError("operator_schmidt: operator is not Hermitian");

  linalg::RealMatrix coeff(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      coeff(i, j) = 0.5 * linalg::hs_inner(linalg::tensor(linalg::pauli(i), linalg::pauli(j)), rho).real() / norm;

  const Expansion e = expand(coeff.cast<Complex>(), tol);
  OperatorSchmidt out;
  out.coefficients = e.coefficients;
  out.multiplicities = e.multiplicities;
  out.schmidt_rank = static_cast<int>(e.coefficients.size());
  out.pauli_coefficients = coeff;
  const double r = 1.0 / std::sqrt(2.0);
  auto to_operator = [&](const Vector& x) {
    Matrix op = Matrix::Zero(2, 2);
    for (int i = 0; i < 4; ++i) op += x[i].real() * r * linalg::pauli(i);
    return op;
  };
  for (std::size_t k = 0; k < e.left.size(); ++k) {
    out.left_ops.push_back(to_operator(e.left[k]));
    out.right_ops.push_back(to_operator(e.right[k]));
  }
  return out;
}

Matrix reconstruct(const OperatorSchmidt& os, double norm) {
  Matrix out = Matrix::Zero(4, 4);
  for (std::size_t k = 0; k < os.coefficients.size(); ++k)
    out += os.coefficients[k] * linalg::tensor(os.left_ops[k], os.right_ops[k]);
  return norm * out;
}

Vector reconstruct(const PureSchmidt& ps) {
  Vector out = Vector::Zero(4);
  for (std::size_t k = 0; k < ps.coefficients.size(); ++k)
    out += ps.coefficients[k] * linalg::tensor(ps.left[k], ps.right[k]);
  return out;
}

}  // namespace twinscope::schmidt
