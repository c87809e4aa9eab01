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

#include "twinscope/twins.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace twinscope::twins {

using linalg::Complex;
using linalg::RealMatrix;

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Coefficient vector of (I, I)/2, unit length in coefficient space.
RealVector trivial_direction() {
  RealVector e = RealVector::Zero(8);
  e[0] = e[4] = 1.0 / kSqrt2;
  return e;
}

// Rows: real then imaginary parts of vec((a1 (x) I) rho - (I (x) a2) rho) as a
// linear function of the 8 Pauli coefficients.
RealMatrix twin_system(const Matrix& rho) {
  RealMatrix sys(32, 8);
  const Matrix id = linalg::identity(2);
  for (int k = 0; k < 4; ++k) {
    const Matrix left = linalg::tensor(linalg::pauli(k), id) * rho;
    const Matrix right = -(linalg::tensor(id, linalg::pauli(k)) * rho);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const int row = 4 * r + c;
        sys(row, k) = left(r, c).real();
        sys(row + 16, k) = left(r, c).imag();
        sys(row, k + 4) = right(r, c).real();
        sys(row + 16, k + 4) = right(r, c).imag();
      }
  }
  return sys;
}

// Canonical orthonormal basis of span(columns): (I, I)/2 first when present,
// then Gram-Schmidt over the projected coordinate axes.
TwinSpace make_space(const RealMatrix& columns) {
  TwinSpace out;
  const Eigen::Index d = columns.cols();
  out.dimension = static_cast<int>(d);
  out.has_nontrivial = d > 1;
  if (d == 0) return out;

  const RealMatrix proj = columns * columns.transpose();
  std::vector<RealVector> basis;
  const RealVector e = trivial_direction();
  if ((proj * e - e).norm() <= 1e-6) basis.push_back(e);
  for (Eigen::Index i = 0; i < 8 && static_cast<Eigen::Index>(basis.size()) < d; ++i) {
    RealVector x = proj.col(i);
    for (const RealVector& b : basis) x -= b.dot(x) * b;
    const double len = x.norm();
    if (len > 1e-6) basis.push_back(x / len);
  }
  for (const RealVector& b : basis) out.basis.push_back(pair_from_coefficients(b / kSqrt2));
  return out;
}

RealMatrix basis_matrix(const TwinSpace& space) {
  RealMatrix m(8, static_cast<Eigen::Index>(space.basis.size()));
  for (std::size_t k = 0; k < space.basis.size(); ++k)
    m.col(static_cast<Eigen::Index>(k)) = kSqrt2 * pair_coefficients(space.basis[k]);
  return m;
}

TwinSpace solve(const RealMatrix& system, double tol) {
  const linalg::Nullspace null = linalg::real_nullspace(system, tol);
  RealMatrix columns(8, static_cast<Eigen::Index>(null.basis.size()));
  for (std::size_t k = 0; k < null.basis.size(); ++k) columns.col(static_cast<Eigen::Index>(k)) = null.basis[k];
  TwinSpace out = make_space(columns);
  out.singular_value_gap = null.rank_gap;
  out.well_conditioned = null.well_conditioned;
  return out;
}

void require_hermitian_2x2(const Matrix& a, const char* what) {
  if (a.rows() != 2 || a.cols() != 2) throw ValidationError(std::string(what) + ": observable must be 2x2");
  if (!linalg::check_hermitian(a, 1e-10 * std::max(1.0, a.norm())).passed())
    throw ValidationError(std::string(what) + ": observable is not Hermitian");
}

}  // namespace

Matrix from_pauli(const std::array<double, 4>& coeffs) {
  Matrix out = Matrix::Zero(2, 2);
  for (int k = 0; k < 4; ++k) out += coeffs[static_cast<std::size_t>(k)] * linalg::pauli(k);
  return out;
}

std::array<double, 4> to_pauli(const Matrix& a) {
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[static_cast<std::size_t>(k)] = 0.5 * (linalg::pauli(k) * a).trace().real();
  return out;
}

RealVector pair_coefficients(const ObservablePair& pair) {
  RealVector c(8);
  const auto p1 = to_pauli(pair.a1);
  const auto p2 = to_pauli(pair.a2);
  for (int k = 0; k < 4; ++k) {
    c[k] = p1[static_cast<std::size_t>(k)];
    c[k + 4] = p2[static_cast<std::size_t>(k)];
  }
  return c;
}

ObservablePair pair_from_coefficients(const RealVector& c) {
  return {from_pauli({c[0], c[1], c[2], c[3]}), from_pauli({c[4], c[5], c[6], c[7]})};
}

TwinCheck is_twin_pair(const ObservablePair& pair, const Matrix& rho, double tol) {
  linalg::require_state(rho, tol, "is_twin_pair");
  require_hermitian_2x2(pair.a1, "is_twin_pair");
  require_hermitian_2x2(pair.a2, "is_twin_pair");
  const Matrix id = linalg::identity(2);
  TwinCheck out;
  out.residual = linalg::hs_norm(linalg::tensor(pair.a1, id) * rho - linalg::tensor(id, pair.a2) * rho);
  out.is_twin = out.residual <= tol;
  return out;
}

TwinSpace twin_space(const Matrix& rho, double tol) {
  linalg::require_state(rho, tol, "twin_space");
  return solve(twin_system(rho), tol);
}

TwinSpace simultaneous_twins(const std::vector<Matrix>& states, double tol) {
  if (states.empty()) throw ValidationError("simultaneous_twins: empty list of states");
  RealMatrix stacked(32 * static_cast<Eigen::Index>(states.size()), 8);
  for (std::size_t s = 0; s < states.size(); ++s) {
    linalg::require_state(states[s], tol, "simultaneous_twins");
    stacked.middleRows(32 * static_cast<Eigen::Index>(s), 32) = twin_system(states[s]);
  }
  return solve(stacked, tol);
}

TwinSpace analytic_edge_twins(const mds::MdsClass& cls) {
  const auto* edge = std::get_if<mds::BinaryEdge>(&cls.kind);
  if (edge == nullptr) throw ValidationError("analytic_edge_twins: state is not a binary Bell mixture");
  const Matrix s = linalg::pauli(edge->axis);
  const double sign = edge->edge_case == mds::EdgeCase::A ? 1.0 : -1.0;
  TwinSpace out;
  out.basis.push_back({0.5 * linalg::identity(2), 0.5 * linalg::identity(2)});
  out.basis.push_back({0.5 * s, 0.5 * sign * s});
  out.dimension = 2;
  out.has_nontrivial = true;
  out.singular_value_gap = std::numeric_limits<double>::infinity();
  return out;
}

int bell_twin_sign(int k, int axis) {
  const mds::TVector signs = mds::bell_t_vector(k);
  return signs.axis(axis) > 0 ? 1 : -1;
}

Matrix bell_twin_partner(int k, const Matrix& a1) {
  require_hermitian_2x2(a1, "bell_twin_partner");
  std::array<double, 4> c = to_pauli(a1);
  for (int i = 1; i <= 3; ++i) c[static_cast<std::size_t>(i)] *= bell_twin_sign(k, i);
  return from_pauli(c);
}

PptVerdict ppt_separable(const Matrix& rho, double tol) {
  linalg::require_state(rho, tol, "ppt_separable");
  PptVerdict out;
  out.min_eigenvalue = linalg::eigh(linalg::partial_transpose(rho), tol).values[3];
  out.separable = out.min_eigenvalue >= -tol;
  return out;
}

std::vector<SeparableForm> biorthogonal_separable_forms() {
  linalg::Vector up = linalg::Vector::Zero(2), down = linalg::Vector::Zero(2);
  up[0] = 1.0;
  down[1] = 1.0;
  const Matrix pu = linalg::projector(up), pd = linalg::projector(down);
  auto bell = [](int k) { return mds::bell_state(k).projector; };

  std::vector<SeparableForm> out;
  out.push_back({0.5 * (linalg::tensor(pu, pu) + linalg::tensor(pd, pd)), 0.5 * (bell(1) + bell(2)),
                 {0.0, 0.0, 1.0}, "(1/2)(|+><+| (x) |+><+| + |-><-| (x) |-><-|) = (1/2)(T1 + T2)"});
  out.push_back({0.5 * (linalg::tensor(pu, pd) + linalg::tensor(pd, pu)), 0.5 * (bell(0) + bell(3)),
                 {0.0, 0.0, -1.0}, "(1/2)(|+><+| (x) |-><-| + |-><-| (x) |+><+|) = (1/2)(T0 + T3)"});
  return out;
}

CorrelationReport distant_correlation(const ObservablePair& pair, const Matrix& rho, double tol) {
  linalg::require_state(rho, tol, "distant_correlation");
  require_hermitian_2x2(pair.a1, "distant_correlation");
  require_hermitian_2x2(pair.a2, "distant_correlation");

  const linalg::EigenDecomposition e1 = linalg::eigh(pair.a1, tol);
  const linalg::EigenDecomposition e2 = linalg::eigh(pair.a2, tol);
  CorrelationReport out;
  out.a1_eigenvalues = {e1.values[0], e1.values[1]};
  out.a2_eigenvalues = {e2.values[0], e2.values[1]};
  auto split = [tol](const linalg::EigenDecomposition& e) {
    return e.values[0] - e.values[1] > tol * std::max(1.0, std::abs(e.values[0]));
  };
  if (!split(e1) || !split(e2)) {
    out.degenerate = true;
    return out;
  }

  double total = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const Matrix p = linalg::projector(e1.vectors.col(a));
      const Matrix q = linalg::projector(e2.vectors.col(b));
      const double prob = (linalg::tensor(p, q) * rho).trace().real();
      out.joint[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = prob;
      total += prob;
    }
  // Outcomes are paired by sorted eigenvalue: a twin measures the same value.
  out.mismatch_probability = out.joint[0][1] + out.joint[1][0];
  const Matrix id = linalg::identity(2);
  out.expectation_gap = std::abs((linalg::tensor(pair.a1, id) * rho).trace().real() -
                                 (linalg::tensor(id, pair.a2) * rho).trace().real());
  if (std::abs(total - 1.0) > 1e-10) throw ConsistencyError("distant_correlation: joint distribution does not sum to 1");
  return out;
}

double subspace_residual(const TwinSpace& a, const TwinSpace& b) {
  if (a.basis.size() != b.basis.size()) return std::numeric_limits<double>::infinity();
  const RealMatrix ma = basis_matrix(a), mb = basis_matrix(b);
  const RealMatrix diff = ma * ma.transpose() - mb * mb.transpose();
  return Eigen::JacobiSVD<RealMatrix>(diff).singularValues()[0];
}

double distance_to_span(const ObservablePair& pair, const TwinSpace& space) {
  const RealVector c = kSqrt2 * pair_coefficients(pair);
  const RealMatrix m = basis_matrix(space);
  return (c - m * (m.transpose() * c)).norm();
}

TwinSpace span_of(const std::vector<ObservablePair>& pairs) {
  RealMatrix m(8, static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = pair_coefficients(pairs[k]);
  Eigen::JacobiSVD<RealMatrix> solver(m, Eigen::ComputeThinU);
  const linalg::RealVector s = solver.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > linalg::kRankTol * std::max(s.size() ? s[0] : 0.0, 1e-300)) ++rank;
  TwinSpace out = make_space(solver.matrixU().leftCols(rank));
  out.singular_value_gap = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace twinscope::twins
