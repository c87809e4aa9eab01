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

#pragma once

#include <vector>

#include "twinscope/linalg.hpp"

namespace twinscope::schmidt {

using linalg::Matrix;
using linalg::Vector;

/// Schmidt canonical expansion of a normalized vector in C^2 (x) C^2:
/// phi = sum_k coefficients[k] * left[k] (x) right[k].
struct PureSchmidt {
  std::vector<double> coefficients;  // positive, descending
  std::vector<Vector> left;
  std::vector<Vector> right;
  int schmidt_rank = 0;
  /// Sizes of the groups of equal coefficients, in coefficient order.
  std::vector<int> multiplicities;
};

/// Antilinear map x -> unitary_part * conj(x), conjugation taken in the
/// computational basis.
struct AntiunitaryMap {
  Matrix unitary_part;
  /// Set when the generating state has Schmidt rank 1: the map is then a
  /// partial isometry, defined only on the range of the reduced operator.
  bool partial = false;

  Vector apply(const Vector& x) const;
  /// The linear map obtained by applying this map twice, U conj(U).
  Matrix squared() const;
};

struct RangeProjector {
  Matrix projector;
  Matrix complement;
};

/// Coefficients are the singular values of the amplitude matrix; degenerate
/// groups use the canonical basis obtained by projecting the computational
/// basis onto the group's subspace.
PureSchmidt pure_schmidt(const Vector& phi, double tol = linalg::kRankTol);

/// Correlation operator sending left[k] to right[k] antilinearly.
AntiunitaryMap correlation_operator(const PureSchmidt& ps);

/// Projector onto the range of a positive operator and its orthocomplement.
RangeProjector range_projector(const Matrix& positive, double tol = linalg::kRankTol);

/// Second-subsystem twin of a1 for the pure state phi, U_a a1 U_a^{-1} Q_2 with
/// the free component on the null space of rho_2 set to zero. Rejects a1 that
/// does not commute with the first reduced operator.
Matrix pure_twin_partner(const Matrix& a1, const Vector& phi, double tol = linalg::kRankTol);

/// Schmidt expansion of a two-qubit operator viewed as a Hilbert-Schmidt
/// supervector: rho / |rho|_HS = sum_k coefficients[k] * left_ops[k] (x) right_ops[k].
struct OperatorSchmidt {
  std::vector<double> coefficients;  // positive, descending
  std::vector<Matrix> left_ops;      // 2x2, HS-orthonormal
  std::vector<Matrix> right_ops;     // 2x2, HS-orthonormal
  int schmidt_rank = 0;
  std::vector<int> multiplicities;
  /// 4x4 real matrix of <sigma_i/sqrt2 (x) sigma_j/sqrt2, rho> / |rho|_HS.
  linalg::RealMatrix pauli_coefficients;
};

OperatorSchmidt operator_schmidt(const Matrix& rho, double tol = linalg::kRankTol);

/// norm * sum_k c_k left_k (x) right_k.
Matrix reconstruct(const OperatorSchmidt& os, double norm);

/// sum_k c_k left_k (x) right_k for a pure expansion.
Vector reconstruct(const PureSchmidt& ps);

}  // namespace twinscope::schmidt
