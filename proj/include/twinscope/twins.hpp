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

#include <array>
#include <string>
#include <vector>

#include "twinscope/linalg.hpp"
#include "twinscope/mds.hpp"

namespace twinscope::twins {

using linalg::Matrix;
using linalg::RealVector;

/// Hermitian observables on the first (a1) and second (a2) qubit.
struct ObservablePair {
  Matrix a1;
  Matrix a2;
};

struct TwinCheck {
  bool is_twin = false;
  double residual = 0.0;  // |(a1 (x) I) rho - (I (x) a2) rho|_HS
};

/// Real solution space of (a1 (x) I) rho = (I (x) a2) rho over Hermitian pairs.
/// The basis is orthonormal for Re(a1, a1') + Re(a2, a2'); (I, I)/2 comes first.
struct TwinSpace {
  std::vector<ObservablePair> basis;
  int dimension = 0;
  bool has_nontrivial = false;
  double singular_value_gap = 0.0;
  bool well_conditioned = true;
};

struct CorrelationReport {
  /// joint[a][b] = Tr[(P_a (x) Q_b) rho]; outcome 0 is the larger eigenvalue.
  std::array<std::array<double, 2>, 2> joint{};
  double mismatch_probability = 0.0;
  double expectation_gap = 0.0;
  std::array<double, 2> a1_eigenvalues{};
  std::array<double, 2> a2_eigenvalues{};
  /// Set when either observable has a repeated eigenvalue; the other fields are
  /// then left at zero.
  bool degenerate = false;
};

struct PptVerdict {
  bool separable = false;
  double min_eigenvalue = 0.0;
};

/// A state written both as a mixture of product states and of Bell projectors.
struct SeparableForm {
  Matrix product_form;
  Matrix bell_form;
  mds::TVector t;
  std::string description;
};

/// Hermitian 2x2 operator from (alpha, beta_1, beta_2, beta_3).
Matrix from_pauli(const std::array<double, 4>& coeffs);
/// Inverse of from_pauli: (Tr a / 2, Tr a s_i / 2).
std::array<double, 4> to_pauli(const Matrix& a);

/// The 8 real Pauli coefficients (a1 first) of a pair.
RealVector pair_coefficients(const ObservablePair& pair);
ObservablePair pair_from_coefficients(const RealVector& c);

TwinCheck is_twin_pair(const ObservablePair& pair, const Matrix& rho, double tol = linalg::kRankTol);

/// Brute-force oracle: nullspace of the 32 x 8 real system of the twin condition.
TwinSpace twin_space(const Matrix& rho, double tol = linalg::kRankTol);

/// Closed-form twins of a binary Bell mixture: (I, I) and (s_i, s_i) on a
/// case-A edge, (I, I) and (s_i, -s_i) on a case-B edge.
TwinSpace analytic_edge_twins(const mds::MdsClass& cls);

/// Second-qubit twin of a1 on the Bell state T_k: the Pauli components of a1
/// are multiplied by the t-vector signs of T_k.
Matrix bell_twin_partner(int k, const Matrix& a1);

/// Sign applied to the beta_i component by bell_twin_partner.
int bell_twin_sign(int k, int axis);

/// Pairs that are twins for every listed state, from one stacked system.
TwinSpace simultaneous_twins(const std::vector<Matrix>& states, double tol = linalg::kRankTol);

PptVerdict ppt_separable(const Matrix& rho, double tol = linalg::kRankTol);

/// The equal-weight mixtures (T1 + T2)/2 and (T0 + T3)/2 with their product
/// decompositions in the computational basis.
std::vector<SeparableForm> biorthogonal_separable_forms();

CorrelationReport distant_correlation(const ObservablePair& pair, const Matrix& rho,
                                      double tol = linalg::kRankTol);

/// Largest distance between a unit vector of one subspace and the other
/// subspace, both sides; infinity when the dimensions differ.
double subspace_residual(const TwinSpace& a, const TwinSpace& b);

/// Distance of a pair (in coefficient space) from span(space.basis).
double distance_to_span(const ObservablePair& pair, const TwinSpace& space);

/// Orthonormal TwinSpace spanned by the given pairs.
TwinSpace span_of(const std::vector<ObservablePair>& pairs);

}  // namespace twinscope::twins
