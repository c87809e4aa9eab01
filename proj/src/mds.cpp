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

#include "twinscope/mds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "twinscope/random.hpp"

namespace twinscope::mds {

using linalg::Complex;
using linalg::RealMatrix;

namespace {

// Slack for the linear consistency relations of a binary edge; the inputs carry
// up to ~tol error in each component.
constexpr double kConsistencySlack = 10.0;

void require_axis(int i, const char* op) {
  if (i < 1 || i > 3) throw ValidationError(std::string(op) + ": axis must be 1, 2 or 3");
}

void require_bell_index(int k, const char* op) {
  if (k < 0 || k > 3) throw ValidationError(std::string(op) + ": Bell index must be in 0..3");
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

}  // namespace

double TVector::axis(int i) const {
  require_axis(i, "TVector::axis");
  return i == 1 ? t1 : i == 2 ? t2 : t3;
}

double& TVector::axis(int i) {
  require_axis(i, "TVector::axis");
  return i == 1 ? t1 : i == 2 ? t2 : t3;
}

double BellWeights::weight(int k) const {
  require_bell_index(k, "BellWeights::weight");
  return k == 0 ? w0 : k == 1 ? w1 : k == 2 ? w2 : w3;
}

double& BellWeights::weight(int k) {
  require_bell_index(k, "BellWeights::weight");
  return k == 0 ? w0 : k == 1 ? w1 : k == 2 ? w2 : w3;
}

double BellWeights::min() const { return std::min({w0, w1, w2, w3}); }

int next_axis(int i, int step) {
  require_axis(i, "next_axis");
  return ((i - 1 + step) % 3 + 3) % 3 + 1;
}

BellState bell_state(int k) {
  require_bell_index(k, "bell_state");
  const double r = 1.0 / std::sqrt(2.0);
  // Amplitude order |++>, |+->, |-+>, |-->.
  Vector psi = Vector::Zero(4);
  switch (k) {
    case 0: psi[1] = r; psi[2] = -r; break;
    case 1: psi[0] = r; psi[3] = -r; break;
    case 2: psi[0] = r; psi[3] = r; break;
    case 3: psi[1] = r; psi[2] = r; break;
  }
  return {psi, linalg::projector(psi)};
}

TVector bell_t_vector(int k) {
  require_bell_index(k, "bell_t_vector");
  switch (k) {
    case 1: return {-1.0, 1.0, 1.0};
    case 2: return {1.0, -1.0, 1.0};
    case 3: return {1.0, 1.0, -1.0};
    default: return {-1.0, -1.0, -1.0};
  }
}

TVector t_from_weights(const BellWeights& w) {
  return {-w.w1 + w.w2 + w.w3 - w.w0,
          w.w1 - w.w2 + w.w3 - w.w0,
          w.w1 + w.w2 - w.w3 - w.w0};
}

BellWeights weights_from_t(const TVector& t) {
  return {(1.0 - t.t1 - t.t2 - t.t3) / 4.0,
          (1.0 - t.t1 + t.t2 + t.t3) / 4.0,
          (1.0 + t.t1 - t.t2 + t.t3) / 4.0,
          (1.0 + t.t1 + t.t2 - t.t3) / 4.0};
}

Matrix build_T(const TVector& t) {
  Matrix out = linalg::identity(4);
  for (int i = 1; i <= 3; ++i) out += t.axis(i) * linalg::tensor(linalg::pauli(i), linalg::pauli(i));
  return 0.25 * out;
}

StateVerdict is_state(const TVector& t, double tol) {
  if (!std::isfinite(t.t1) || !std::isfinite(t.t2) || !std::isfinite(t.t3))
    throw ValidationError("is_state: t has a non-finite component");
  StateVerdict v;
  const BellWeights w = weights_from_t(t);
  v.min_weight = w.min();
  for (int k = 0; k < 4; ++k)
    if (w.weight(k) < -tol && (v.offending_index < 0 || w.weight(k) < w.weight(v.offending_index)))
      v.offending_index = k;
  const bool by_weights = v.min_weight >= -tol;

  v.min_eigenvalue = linalg::eigh(build_T(t)).values[3];
  const bool by_spectrum = v.min_eigenvalue >= -tol;
  if (by_weights != by_spectrum) {
    std::ostringstream msg;
    msg << "is_state: weight test (min " << v.min_weight << ") and spectrum test (min eigenvalue "
        << v.min_eigenvalue << ") disagree at tolerance " << tol;
    throw ConsistencyError(msg.str());
  }
  v.is_state = by_weights;
  return v;
}

MdsClass classify(const TVector& t, double tol) {
  MdsClass out;
  out.weights = weights_from_t(t);
  const StateVerdict verdict = is_state(t, tol);
  if (!verdict.is_state) {
    out.kind = NonState{};
    out.detail = "outside the tetrahedron: w" + std::to_string(verdict.offending_index) + " = " +
                 fmt(out.weights.weight(verdict.offending_index));
    return out;
  }

  std::vector<int> unit_axes;
  for (int i = 1; i <= 3; ++i)
    if (std::abs(t.axis(i)) >= 1.0 - tol) unit_axes.push_back(i);

  const double slack = kConsistencySlack * tol;
  switch (unit_axes.size()) {
    case 3: {
      for (int k = 0; k < 4; ++k) {
        const TVector v = bell_t_vector(k);
        if ((v.t1 > 0) == (t.t1 > 0) && (v.t2 > 0) == (t.t2 > 0) && (v.t3 > 0) == (t.t3 > 0)) {
          out.kind = BellVertex{k};
          out.detail = "all |t_i| = 1, sign pattern of T" + std::to_string(k);
          return out;
        }
      }
      throw ConsistencyError("classify: |t_i| = 1 on all axes with a sign pattern that is not a state");
    }
    case 1: {
      const int i = unit_axes.front();
      const int j = next_axis(i, 1);
      const int m = next_axis(i, 2);
      const double tj = t.axis(j);
      const double tm = t.axis(m);
      BinaryEdge edge;
      edge.axis = i;
      edge.parameter = tj;
      BellWeights w;
      if (t.axis(i) > 0) {
        edge.edge_case = EdgeCase::A;
        if (std::abs(tm + tj) > slack)
          throw ConsistencyError("classify: case A edge violates t_{i+2} = -t_{i+1} (gap " +
                                 fmt(std::abs(tm + tj)) + ")");
        w.weight(j) = (1.0 - tj) / 2.0;
        w.weight(m) = (1.0 - tm) / 2.0;
      } else {
        edge.edge_case = EdgeCase::B;
        if (std::abs(tm - tj) > slack)
          throw ConsistencyError("classify: case B edge violates t_{i+1} = t_{i+2} (gap " +
                                 fmt(std::abs(tm - tj)) + ")");
        w.weight(i) = (1.0 + tj) / 2.0;
        w.weight(0) = (1.0 - tj) / 2.0;
      }
      for (int k = 0; k < 4; ++k)
        if (std::abs(w.weight(k) - out.weights.weight(k)) > slack)
          throw ConsistencyError("classify: edge weights disagree with the linear inverse");
      out.kind = edge;
      out.weights = w;
      std::ostringstream d;
      if (edge.edge_case == EdgeCase::A) {
        d << "t" << i << " = +1: mixture " << fmt(w.weight(j)) << " T" << j << " + " << fmt(w.weight(m)) << " T" << m;
      } else {
        d << "t" << i << " = -1: mixture " << fmt(w.weight(i)) << " T" << i << " + " << fmt(w.weight(0)) << " T0";
      }
      out.detail = d.str();
      return out;
    }
    case 2:
      throw ConsistencyError("classify: state with |t_i| = 1 on exactly two axes (t = (" + fmt(t.t1) + ", " +
                             fmt(t.t2) + ", " + fmt(t.t3) + "))");
    default: {
      const double margin = 1.0 - std::max({std::abs(t.t1), std::abs(t.t2), std::abs(t.t3)});
      out.kind = GenericInterior{};
      out.detail = "no |t_i| within " + fmt(tol) + " of 1 (margin " + fmt(margin) + ")";
      return out;
    }
  }
}

bool is_mds(const Matrix& rho, double tol) {
  if (rho.rows() != 4 || rho.cols() != 4) throw ValidationError("is_mds: expected a 4x4 operator");
  linalg::require_state(rho, tol, "is_mds");
  const Matrix half = 0.5 * linalg::identity(2);
  return (linalg::partial_trace(rho, 1) - half).cwiseAbs().maxCoeff() <= tol &&
         (linalg::partial_trace(rho, 2) - half).cwiseAbs().maxCoeff() <= tol;
}

RealMatrix correlation_matrix(const Matrix& rho) {
  RealMatrix c(3, 3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      c(i - 1, j - 1) = (rho * linalg::tensor(linalg::pauli(i), linalg::pauli(j))).trace().real();
  return c;
}

RealMatrix rotation_of(const Matrix& u) {
  RealMatrix r(3, 3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      r(i - 1, j - 1) = 0.5 * (linalg::pauli(i) * u * linalg::pauli(j) * u.adjoint()).trace().real();
  return r;
}

Matrix lift_to_su2(const RealMatrix& r) {
  // For U realizing R: M + sum_j (U s_j U^dagger) M s_j = 2 Tr(U^dagger M) U.
  // Among M in {I, s_1, s_2, s_3} at least one has Tr(U^dagger M) != 0.
  Matrix best;
  double best_norm = -1.0;
  for (int k = 0; k < 4; ++k) {
    const Matrix m = linalg::pauli(k);
    Matrix s = m;
    for (int j = 1; j <= 3; ++j) {
      Matrix rotated = Matrix::Zero(2, 2);
      for (int i = 1; i <= 3; ++i) rotated += r(i - 1, j - 1) * linalg::pauli(i);
      s += rotated * m * linalg::pauli(j);
    }
    if (s.norm() > best_norm) {
      best_norm = s.norm();
      best = s;
    }
  }
  Matrix u = best / std::sqrt(best.determinant());
  const Complex tr = u.trace();
  if (std::abs(tr) > 1e-12) {
    if (tr.real() < 0) u = -u;
  } else {
    // Half-turn: trace vanishes, fix the sign by the first significant entry.
    for (Eigen::Index i = 0; i < 4; ++i) {
      const Complex z = u(i % 2, i / 2);
      if (std::abs(z) > 1e-12) {
        if (z.real() < -1e-12 || (std::abs(z.real()) <= 1e-12 && z.imag() < 0)) u = -u;
        break;
      }
    }
  }
  return u;
}

CanonicalForm canonicalize(const Matrix& rho, double tol) {
  if (!is_mds(rho, tol))
    throw ValidationError("canonicalize: reduced states deviate from I/2, the input is not an MDS state");

  const RealMatrix c = correlation_matrix(rho);
  Eigen::JacobiSVD<RealMatrix> solver(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealMatrix p = solver.matrixU();
  RealMatrix q = solver.matrixV();
  linalg::RealVector s = solver.singularValues();
  if (p.determinant() < 0) {
    p.col(2) *= -1.0;
    s[2] *= -1.0;
  }
  if (q.determinant() < 0) {
    q.col(2) *= -1.0;
    s[2] *= -1.0;
  }

  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(std::abs(s[a]) - std::abs(s[b])) > tol) return std::abs(s[a]) > std::abs(s[b]);
    return s[a] > s[b];
  });
  RealMatrix perm = RealMatrix::Zero(3, 3);
  for (int a = 0; a < 3; ++a) perm(a, order[static_cast<std::size_t>(a)]) = 1.0;
  if (perm.determinant() < 0) perm = -perm;

  CanonicalForm out;
  out.u1 = lift_to_su2(perm * p.transpose());
  out.u2 = lift_to_su2(perm * q.transpose());
  out.t = {s[order[0]], s[order[1]], s[order[2]]};
  const Matrix local = linalg::tensor(out.u1, out.u2);
  out.residual = linalg::hs_norm(local * rho * local.adjoint() - build_T(out.t));
  return out;
}

TVector edge_point(int axis, EdgeCase edge_case, double p) {
  require_axis(axis, "edge_point");
  if (!(std::abs(p) < 1.0)) throw ValidationError("edge_point: parameter must lie in the open interval (-1, 1)");
  TVector t;
  t.axis(axis) = edge_case == EdgeCase::A ? 1.0 : -1.0;
  t.axis(next_axis(axis, 1)) = edge_case == EdgeCase::A ? -p : p;
  t.axis(next_axis(axis, 2)) = p;
  return t;
}

TVector sample_tetrahedron(std::uint64_t seed, const Region& region) {
  Rng rng(seed);
  if (const auto* v = std::get_if<VertexRegion>(&region)) return bell_t_vector(v->index);
  if (const auto* e = std::get_if<EdgeRegion>(&region)) {
    double p = 0.0;
    if (e->parameter) {
      p = *e->parameter;
    } else {
      p = std::uniform_real_distribution<double>(-0.98, 0.98)(rng);
    }
    return edge_point(e->axis, e->edge_case, p);
  }
  std::exponential_distribution<double> expo(1.0);
  for (;;) {
    BellWeights w{expo(rng), expo(rng), expo(rng), expo(rng)};
    const double total = w.sum();
    for (int k = 0; k < 4; ++k) w.weight(k) /= total;
    if (w.min() > 0.01) return t_from_weights(w);
  }
}

std::string describe(const MdsClass& cls) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BellVertex>) {
          return "BellVertex(T" + std::to_string(k.index) + ")";
        } else if constexpr (std::is_same_v<K, BinaryEdge>) {
          return std::string("BinaryEdge(axis ") + std::to_string(k.axis) + ", case " +
                 (k.edge_case == EdgeCase::A ? "A" : "B") + ")";
        } else if constexpr (std::is_same_v<K, GenericInterior>) {
          return "GenericInterior";
        } else {
          return "NonState";
        }
      },
      cls.kind);
}

}  // namespace twinscope::mds
