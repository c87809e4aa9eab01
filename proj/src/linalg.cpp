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

#include "twinscope/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace twinscope::linalg {

namespace {

void require_square(const Matrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << op << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
}

void require_two_qubit(const Matrix& rho, const char* op) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    std::ostringstream msg;
    msg << op << ": expected a 4x4 operator, got " << rho.rows() << "x" << rho.cols();
    throw ValidationError(msg.str());
  }
}

// Lexicographic key for tie-breaking between phase-normalized vectors: the
// earlier first significant component wins, then larger real parts, then
// larger imaginary parts.
bool vector_precedes(const Vector& a, const Vector& b) {
  constexpr double eps = 1e-10;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ar = a[i].real(), br = b[i].real();
    if (std::abs(ar - br) > eps) return ar > br;
    const double ai = a[i].imag(), bi = b[i].imag();
    if (std::abs(ai - bi) > eps) return ai > bi;
  }
  return false;
}

// Stable descending order of `values`, with near-equal values ordered by
// their (already normalized) vectors.
std::vector<Eigen::Index> descending_order(const RealVector& values, const Matrix& vectors) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double tie = kRankTol * scale;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(values[a] - values[b]) > tie) return values[a] > values[b];
    return vector_precedes(vectors.col(a), vectors.col(b));
  });
  return order;
}

}  // namespace

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix pauli(int i) {
  const Complex I(0.0, 1.0);
  Matrix m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default:
      throw ValidationError("pauli: index " + std::to_string(i) + " outside 0..3");
  }
  return m;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

Matrix partial_trace(const Matrix& rho, int keep) {
  require_two_qubit(rho, "partial_trace");
  Matrix out = Matrix::Zero(2, 2);
  // rho index (2*i + j) with i the first qubit, j the second.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int k = 0; k < 2; ++k) {
        if (keep == 1) {
          out(a, b) += rho(2 * a + k, 2 * b + k);
        } else if (keep == 2) {
          out(a, b) += rho(2 * k + a, 2 * k + b);
        } else {
          throw ValidationError("partial_trace: subsystem index must be 1 or 2");
        }
      }
  return out;
}

Matrix partial_transpose(const Matrix& rho) {
  require_two_qubit(rho, "partial_transpose");
  Matrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + j, 2 * k + l) = rho(2 * i + l, 2 * k + j);
  return out;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("hs_inner: dimension mismatch");
  return (a.adjoint() * b).trace();
}

double hs_norm(const Matrix& a) { return a.norm(); }

bool all_finite(const Matrix& m) { return m.allFinite(); }

HermitianCheck check_hermitian(const Matrix& m, double tol) {
  HermitianCheck check;
  check.tolerance = tol;
  if (m.rows() != m.cols()) {
    check.max_deviation = std::numeric_limits<double>::infinity();
    return check;
  }
  check.max_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return check;
}

Vector phase_normalized(const Vector& v, double tol) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > tol * scale) return v * (std::conj(v[i]) / mag);
  }
  return v;
}

EigenDecomposition eigh(const Matrix& m, double tol) {
  require_square(m, "eigh");
  if (!m.allFinite()) throw ValidationError("eigh: non-finite entries");
  const HermitianCheck herm = check_hermitian(m, tol * std::max(1.0, m.cwiseAbs().maxCoeff()));
  if (!herm.passed()) {
    std::ostringstream msg;
    msg << "eigh: matrix is not Hermitian (max |M - M^dagger| = " << herm.max_deviation << ")";
    throw ValidationError(msg.str());
  }
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ConsistencyError("eigh: eigensolver did not converge");

  Matrix vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) vectors.col(k) = phase_normalized(vectors.col(k));
  const RealVector values = solver.eigenvalues();
  const auto order = descending_order(values, vectors);

  EigenDecomposition out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[static_cast<Eigen::Index>(k)] = values[order[k]];
    out.vectors.col(static_cast<Eigen::Index>(k)) = vectors.col(order[k]);
  }
  return out;
}

SvdResult svd(const Matrix& m) {
  if (!m.allFinite()) throw ValidationError("svd: non-finite entries");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix u = solver.matrixU();
  Matrix v = solver.matrixV();
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const Vector normalized = phase_normalized(u.col(k));
    // u_k -> u_k e^{i phi} needs v_k -> v_k e^{i phi} to keep u s v^dagger.
    Complex phase(1.0, 0.0);
    for (Eigen::Index i = 0; i < u.rows(); ++i)
      if (std::abs(u(i, k)) > 0.0) {
        phase = normalized[i] / u(i, k);
        break;
      }
    u.col(k) = normalized;
    v.col(k) *= phase;
  }
  const RealVector values = solver.singularValues();
  const auto order = descending_order(values, u);

  SvdResult out;
  out.singular_values.resize(values.size());
  out.u.resize(u.rows(), u.cols());
  out.v.resize(v.rows(), v.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto dst = static_cast<Eigen::Index>(k);
    out.singular_values[dst] = values[order[k]];
    out.u.col(dst) = u.col(order[k]);
    out.v.col(dst) = v.col(order[k]);
  }
  return out;
}

Nullspace real_nullspace(const RealMatrix& m, double tol) {
  if (!m.allFinite()) throw ValidationError("real_nullspace: non-finite entries");
  const Eigen::Index n = m.cols();
  Nullspace out;
  if (m.rows() == 0 || n == 0) {
    for (Eigen::Index k = 0; k < n; ++k) out.basis.push_back(RealVector::Unit(n, k));
    return out;
  }
  Eigen::JacobiSVD<RealMatrix> solver(m, Eigen::ComputeFullV);
  out.singular_values = solver.singularValues();
  const RealMatrix& v = solver.matrixV();
  const double s_max = out.singular_values.size() ? out.singular_values[0] : 0.0;
  const double cut = tol * s_max;

  Eigen::Index rank = 0;
  if (s_max > 0.0)
    while (rank < out.singular_values.size() && out.singular_values[rank] > cut) ++rank;
  out.rank = rank;

  for (Eigen::Index k = rank; k < n; ++k) {
    RealVector col = v.col(k);
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(col[i]) > 1e-10) {
        if (col[i] < 0) col = -col;
        break;
      }
    out.basis.push_back(col);
  }

  if (rank > 0 && rank < n) {
    const double kept = out.singular_values[rank - 1];
    const double dropped = rank < out.singular_values.size() ? out.singular_values[rank] : 0.0;
    const double floor = std::numeric_limits<double>::epsilon() * s_max;
    out.rank_gap = kept / std::max(dropped, floor);
    out.well_conditioned = kept >= 100.0 * cut && dropped <= cut / 100.0;
  }
  return out;
}

StateCheck check_state(const Matrix& rho, double tol) {
  StateCheck out;
  if (rho.rows() != rho.cols() || rho.rows() == 0 || !rho.allFinite()) return out;
  out.hermitian_deviation = check_hermitian(rho, tol).max_deviation;
  out.trace_deviation = std::abs(rho.trace() - Complex(1.0, 0.0));
  const Matrix sym = 0.5 * (rho + rho.adjoint());
  out.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Matrix>(sym, Eigen::EigenvaluesOnly).eigenvalues()[0];
  out.valid = out.hermitian_deviation <= tol && out.trace_deviation <= tol && out.min_eigenvalue >= -tol;
  return out;
}

void require_state(const Matrix& rho, double tol, const char* what) {
  if (rho.rows() != rho.cols()) {
    std::ostringstream msg;
    msg << what << ": operator is not square (" << rho.rows() << "x" << rho.cols() << ")";
    throw ValidationError(msg.str());
  }
  const StateCheck c = check_state(rho, tol);
  if (c.valid) return;
  std::ostringstream msg;
  msg << what << ": not a density matrix (hermitian deviation " << c.hermitian_deviation
      << ", trace deviation " << c.trace_deviation << ", min eigenvalue " << c.min_eigenvalue
      << ", tolerance " << tol << ")";
  throw ValidationError(msg.str());
}

Matrix projector(const Vector& x) { return x * x.adjoint(); }

}  // namespace twinscope::linalg
