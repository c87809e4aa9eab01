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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "twinscope/linalg.hpp"

namespace twinscope::mds {

using linalg::Matrix;
using linalg::Vector;

/// Diagonal correlation components of T(t) = (1/4)(I(x)I + sum_i t_i s_i (x) s_i).
struct TVector {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  /// Component by axis, 1..3.
  double axis(int i) const;
  double& axis(int i);
  std::array<double, 3> array() const { return {t1, t2, t3}; }
};

/// Mixing weights over the Bell projectors T_0 (singlet) .. T_3.
struct BellWeights {
  double w0 = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;

  double weight(int k) const;
  double& weight(int k);
  double sum() const { return w0 + w1 + w2 + w3; }
  double min() const;
  std::array<double, 4> array() const { return {w0, w1, w2, w3}; }
};

enum class EdgeCase { A, B };

struct BellVertex {
  int index = 0;  // k of T_k
};

/// Binary mixture of Bell states. `axis` is the i with |t_i| = 1: in case A
/// (t_i = +1) T_i is the non-singlet state left out of the mixture; in case B
/// (t_i = -1) the mixture is of T_i with the singlet.
struct BinaryEdge {
  int axis = 0;
  EdgeCase edge_case = EdgeCase::A;
  double parameter = 0.0;  // t_{i+1}
};

struct GenericInterior {};
struct NonState {};

using MdsKind = std::variant<BellVertex, BinaryEdge, GenericInterior, NonState>;

struct MdsClass {
  MdsKind kind;
  BellWeights weights;
  std::string detail;
};

struct CanonicalForm {
  Matrix u1;
  Matrix u2;
  TVector t;
  double residual = 0.0;
};

struct BellState {
  Vector vector;
  Matrix projector;
};

struct StateVerdict {
  bool is_state = false;
  double min_weight = 0.0;
  int offending_index = -1;  // weight index below -tol, or -1
  double min_eigenvalue = 0.0;
};

/// Cyclic successor on the axes {1, 2, 3}: next_axis(3, 1) == 1.
int next_axis(int i, int step);

/// psi_0 = (|+-> - |-+>)/sqrt2, psi_1 = (|++> - |-->)/sqrt2,
/// psi_2 = (|++> + |-->)/sqrt2, psi_3 = (|+-> + |-+>)/sqrt2.
BellState bell_state(int k);

/// t-vector of the Bell projector T_k.
TVector bell_t_vector(int k);

TVector t_from_weights(const BellWeights& w);
BellWeights weights_from_t(const TVector& t);

Matrix build_T(const TVector& t);

/// Tetrahedron membership. Decided by the Bell weights and, independently, by
/// the smallest eigenvalue of build_T(t); throws ConsistencyError if they differ.
StateVerdict is_state(const TVector& t, double tol = linalg::kRankTol);

/// Stratum of a Bell-diagonal state: vertex, open edge, or the rest.
/// Throws ConsistencyError for configurations that no state can have.
MdsClass classify(const TVector& t, double tol = linalg::kRankTol);

/// True iff both reduced operators equal I/2 within tol. The input must be a state.
bool is_mds(const Matrix& rho, double tol = linalg::kRankTol);

/// 3x3 real correlation matrix C_ij = Tr[rho (sigma_i (x) sigma_j)].
linalg::RealMatrix correlation_matrix(const Matrix& rho);

/// SO(3) rotation R with u sigma_j u^dagger = sum_i R_ij sigma_i.
linalg::RealMatrix rotation_of(const Matrix& u);

/// SU(2) element realizing the rotation R, the lift with nonnegative trace.
Matrix lift_to_su2(const linalg::RealMatrix& r);

/// Local unitaries bringing an MDS state to Bell-diagonal form, with |t_i|
/// sorted descending (ties: larger signed value first).
CanonicalForm canonicalize(const Matrix& rho, double tol = linalg::kRankTol);

struct InteriorRegion {};
struct EdgeRegion {
  int axis = 3;
  EdgeCase edge_case = EdgeCase::A;
  /// Fixes t_{i+2}; drawn from the seed when absent.
  std::optional<double> parameter;
};
struct VertexRegion {
  int index = 0;
};
using Region = std::variant<InteriorRegion, EdgeRegion, VertexRegion>;

/// Deterministic point of the requested stratum. Interior points have every
/// Bell weight above 0.01; drawn edge parameters stay within |t| <= 0.98.
TVector sample_tetrahedron(std::uint64_t seed, const Region& region);

/// Edge point on axis i: case A gives t_i = 1, t_{i+1} = -p, t_{i+2} = p;
/// case B gives t_i = -1, t_{i+1} = t_{i+2} = p.
TVector edge_point(int axis, EdgeCase edge_case, double p);

std::string describe(const MdsClass& cls);

}  // namespace twinscope::mds
