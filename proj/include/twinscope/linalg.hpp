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

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "twinscope/errors.hpp"

namespace twinscope::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Relative rank threshold shared by every nullspace and Schmidt spectrum.
inline constexpr double kRankTol = 1e-9;

Matrix identity(Eigen::Index n);

/// Pauli matrix by index; 0 is the 2x2 identity, 1..3 are sigma_x, sigma_y, sigma_z.
Matrix pauli(int i);

/// Kronecker product a (x) b.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

/// Reduced operator of a 4x4 two-qubit operator. `keep` names the subsystem
/// that survives (1 or 2); the other one is traced out.
Matrix partial_trace(const Matrix& rho, int keep);

/// Transpose on the second qubit of a 4x4 operator.
Matrix partial_transpose(const Matrix& rho);

/// Hilbert-Schmidt scalar product (a, b) = Tr a^dagger b.
Complex hs_inner(const Matrix& a, const Matrix& b);
double hs_norm(const Matrix& a);

bool all_finite(const Matrix& m);

struct HermitianCheck {
  double max_deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_deviation <= tolerance; }
};

HermitianCheck check_hermitian(const Matrix& m, double tol);

struct EigenDecomposition {
  RealVector values;  // descending
  Matrix vectors;     // orthonormal columns, matching `values`
};

/// Spectral decomposition of a Hermitian matrix. Eigenvalues come out in
/// descending order; each eigenvector is phase-normalized so its first
/// significant component is real positive, and ties are ordered by those
/// normalized vectors.
EigenDecomposition eigh(const Matrix& m, double tol = kRankTol);

struct SvdResult {
  Matrix u;
  RealVector singular_values;  // descending
  Matrix v;                    // m = u diag(s) v^dagger
};

/// Thin singular value decomposition. Columns of `u` are phase-normalized
/// like `eigh`; the compensating phase sits in `v`.
SvdResult svd(const Matrix& m);

struct Nullspace {
  std::vector<RealVector> basis;
  RealVector singular_values;  // descending, min(rows, cols) entries
  Eigen::Index rank = 0;
  /// Ratio of the smallest retained singular value to the largest discarded
  /// one (discarded values below machine precision are clamped to eps * s_max).
  /// Infinite when one side is empty.
  double rank_gap = std::numeric_limits<double>::infinity();
  /// False when the singular values do not clear `tol` by two orders of
  /// magnitude on both sides, i.e. the rank decision is fragile.
  bool well_conditioned = true;
};

/// Orthonormal basis of {x : m x = 0}. A singular value counts as zero when it
/// is at most tol times the largest one.
Nullspace real_nullspace(const RealMatrix& m, double tol = kRankTol);

/// Rescale `v` by a unit phase so its first component with modulus above
/// `tol * |v|_inf` is real positive.
Vector phase_normalized(const Vector& v, double tol = 1e-10);

/// Check that a matrix is a two-qubit (or general) density matrix: Hermitian,
/// unit trace, positive semidefinite, each within tol.
struct StateCheck {
  double hermitian_deviation = 0.0;
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool valid = false;
};

StateCheck check_state(const Matrix& rho, double tol);

/// Throws ValidationError with a description when check_state fails.
void require_state(const Matrix& rho, double tol, const char* what);

/// |x><x|
Matrix projector(const Vector& x);

}  // namespace twinscope::linalg
