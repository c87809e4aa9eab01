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

#include "twinscope/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "twinscope/random.hpp"
#include "twinscope/schmidt.hpp"
#include "twinscope/twins.hpp"

namespace twinscope::cli {

using linalg::Matrix;
using linalg::Vector;

namespace {

constexpr double kExact = 1e-12;
constexpr double kTight = 1e-10;
constexpr double kSubspace = 1e-9;

struct Outcome {
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

PropertyResult run_check(std::string name, std::string scope, const std::function<Outcome()>& body) {
  PropertyResult r{std::move(name), std::move(scope), false, 0.0, {}};
  try {
    const Outcome o = body();
    r.passed = o.passed;
    r.residual = o.residual;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

std::string str(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

Outcome within(double residual, double bound, std::string detail = {}) {
  return {residual <= bound, residual, detail.empty() ? "residual " + str(residual) + " <= " + str(bound) : detail};
}

Matrix conjugate_by(const Matrix& u, const Matrix& a) { return u * a * u.adjoint(); }

twins::TwinSpace transform(const twins::TwinSpace& space, const Matrix& u1, const Matrix& u2) {
  std::vector<twins::ObservablePair> pairs;
  for (const auto& p : space.basis) pairs.push_back({conjugate_by(u1, p.a1), conjugate_by(u2, p.a2)});
  return twins::span_of(pairs);
}

int expected_dimension(const mds::MdsClass& cls) {
  if (std::holds_alternative<mds::BellVertex>(cls.kind)) return 4;
  if (std::holds_alternative<mds::BinaryEdge>(cls.kind)) return 2;
  return 1;
}

std::vector<double> sorted_abs(const mds::TVector& t) {
  std::vector<double> v{std::abs(t.t1), std::abs(t.t2), std::abs(t.t3)};
  std::sort(v.begin(), v.end());
  return v;
}

double sorted_spectrum_gap(const Matrix& a, const Matrix& b) {
  const auto ea = linalg::eigh(a).values;
  const auto eb = linalg::eigh(b).values;
  return (ea - eb).cwiseAbs().maxCoeff();
}

Outcome covariance_outcome(const Matrix& rho, const twins::TwinSpace& space, Rng& rng, double tol) {
  const Matrix u1 = random_unitary(rng, 2);
  const Matrix u2 = random_unitary(rng, 2);
  const Matrix local = linalg::tensor(u1, u2);
  const Matrix moved = local * rho * local.adjoint();
  const twins::TwinSpace target = twins::twin_space(moved, tol);
  if (target.dimension != space.dimension)
    return {false, 0.0, "dimension " + std::to_string(space.dimension) + " -> " + std::to_string(target.dimension)};
  double worst = 0.0;
  for (const auto& p : space.basis)
    worst = std::max(worst, twins::is_twin_pair({conjugate_by(u1, p.a1), conjugate_by(u2, p.a2)}, moved, tol).residual);
  worst = std::max(worst, twins::subspace_residual(transform(space, u1, u2), target));
  return within(worst, kSubspace);
}

Outcome correlation_outcome(const Matrix& rho, const twins::TwinSpace& space, double tol) {
  double worst = 0.0;
  int checked = 0;
  for (std::size_t k = 1; k < space.basis.size(); ++k) {
    const twins::CorrelationReport rep = twins::distant_correlation(space.basis[k], rho, tol);
    if (rep.degenerate) continue;
    ++checked;
    worst = std::max({worst, rep.mismatch_probability, rep.expectation_gap});
  }
  if (checked == 0) return {true, 0.0, "no nondegenerate nontrivial twin pairs"};
  return within(worst, kTight, std::to_string(checked) + " pairs, worst mismatch/expectation gap " + str(worst));
}

Outcome spectra_outcome(const twins::TwinSpace& space) {
  double worst = 0.0;
  for (std::size_t k = 1; k < space.basis.size(); ++k)
    worst = std::max(worst, sorted_spectrum_gap(space.basis[k].a1, space.basis[k].a2));
  if (space.basis.size() <= 1) return {true, 0.0, "no nontrivial twin pairs"};
  return within(worst, kSubspace);
}

// Hermitian a1 commuting with rho1: a random spectrum on rho1's eigenbasis, or
// any Hermitian matrix when rho1 is proportional to the identity.
Matrix commuting_observable(const Matrix& rho1, Rng& rng) {
  const linalg::EigenDecomposition e = linalg::eigh(rho1);
  if (std::abs(e.values[0] - e.values[1]) <= linalg::kRankTol) return random_hermitian(rng, 2);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a = Matrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k) a += normal(rng) * linalg::projector(e.vectors.col(k));
  return a;
}

Outcome pure_consistency_outcome(const Vector& phi, Rng& rng, double tol) {
  const Matrix rho = linalg::projector(phi);
  const Matrix rho1 = linalg::partial_trace(rho, 1);
  const twins::TwinSpace space = twins::twin_space(rho, tol);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a1 = commuting_observable(rho1, rng);
    const Matrix a2 = schmidt::pure_twin_partner(a1, phi, tol);
    const twins::ObservablePair pair{a1, a2};
    worst = std::max(worst, twins::distance_to_span(pair, space) / std::max(1.0, a1.norm()));
    const Matrix id = linalg::identity(2);
    worst = std::max(worst, (linalg::tensor(a1, id) * phi - linalg::tensor(id, a2) * phi).norm());
  }
  for (const auto& p : space.basis) worst = std::max(worst, (p.a1 * rho1 - rho1 * p.a1).norm());
  return within(worst, kSubspace);
}

}  // namespace

std::vector<PropertyResult> verify_bell_diagonal(const mds::TVector& t, std::uint64_t seed, double tol) {
  std::vector<PropertyResult> out;
  const Matrix rho = mds::build_T(t);
  const mds::BellWeights w = mds::weights_from_t(t);

  out.push_back(run_check("mds.weights_round_trip", "input", [&] {
    const mds::BellWeights back = mds::weights_from_t(mds::t_from_weights(w));
    const mds::TVector tt = mds::t_from_weights(w);
    double r = 0.0;
    for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(back.weight(k) - w.weight(k)));
    for (int i = 1; i <= 3; ++i) r = std::max(r, std::abs(tt.axis(i) - t.axis(i)));
    return within(r, kExact);
  }));

  out.push_back(run_check("mds.bell_expansion", "input", [&] {
    Matrix mix = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) mix += w.weight(k) * mds::bell_state(k).projector;
    return within((mix - rho).cwiseAbs().maxCoeff(), kExact);
  }));

  out.push_back(run_check("mds.state_test_agreement", "input", [&] {
    const mds::StateVerdict v = mds::is_state(t, tol);
    return Outcome{v.is_state, std::abs(v.min_weight - v.min_eigenvalue),
                   "min weight " + str(v.min_weight) + ", min eigenvalue " + str(v.min_eigenvalue)};
  }));

  const mds::MdsClass cls = mds::classify(t, tol);

  out.push_back(run_check("mds.classification_strata", "input", [&] {
    int positive = 0, unit = 0, ones = 0;
    for (int k = 0; k < 4; ++k) {
      if (mds::weights_from_t(t).weight(k) > tol) ++positive;
      if (mds::weights_from_t(t).weight(k) >= 1.0 - tol) ++ones;
    }
    for (int i = 1; i <= 3; ++i)
      if (std::abs(t.axis(i)) >= 1.0 - tol) ++unit;
    bool ok = false;
    if (std::holds_alternative<mds::BellVertex>(cls.kind)) ok = ones == 1 && unit == 3;
    else if (std::holds_alternative<mds::BinaryEdge>(cls.kind)) ok = positive == 2 && unit == 1;
    else if (std::holds_alternative<mds::GenericInterior>(cls.kind)) ok = positive >= 3 && unit == 0;
    return Outcome{ok, 0.0, mds::describe(cls) + ": " + std::to_string(positive) + " positive weights, " +
                               std::to_string(unit) + " unit components"};
  }));

  out.push_back(run_check("mds.edge_consistency", "input", [&] {
    const auto* e = std::get_if<mds::BinaryEdge>(&cls.kind);
    if (e == nullptr) return Outcome{true, 0.0, "not an edge state"};
    const double a = t.axis(mds::next_axis(e->axis, 1)), b = t.axis(mds::next_axis(e->axis, 2));
    const double gap = e->edge_case == mds::EdgeCase::A ? std::abs(a + b) : std::abs(a - b);
    return within(gap, 10 * tol);
  }));

  out.push_back(run_check("mds.canonicalize_round_trip", "input", [&] {
    Rng rng(seed);
    const Matrix local = linalg::tensor(random_unitary(rng, 2), random_unitary(rng, 2));
    const mds::CanonicalForm cf = mds::canonicalize(local * rho * local.adjoint(), tol);
    const auto a = sorted_abs(cf.t), b = sorted_abs(t);
    double r = cf.residual;
    for (std::size_t k = 0; k < 3; ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return within(r, kSubspace);
  }));

  out.push_back(run_check("schmidt.operator_spectrum", "input", [&] {
    const schmidt::OperatorSchmidt os = schmidt::operator_schmidt(rho, tol);
    std::vector<double> expected{1.0, std::abs(t.t1), std::abs(t.t2), std::abs(t.t3)};
    const double norm = std::sqrt(1.0 + t.t1 * t.t1 + t.t2 * t.t2 + t.t3 * t.t3);
    for (double& x : expected) x /= norm;
    std::sort(expected.rbegin(), expected.rend());
    double r = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double got = k < os.coefficients.size() ? os.coefficients[k] : 0.0;
      r = std::max(r, std::abs(got - expected[k]));
    }
    return within(r, kTight);
  }));

  out.push_back(run_check("schmidt.local_unitary_invariance", "input", [&] {
    Rng rng(seed + 1);
    const Matrix local = linalg::tensor(random_unitary(rng, 2), random_unitary(rng, 2));
    const auto a = schmidt::operator_schmidt(rho, tol).coefficients;
    const auto b = schmidt::operator_schmidt(local * rho * local.adjoint(), tol).coefficients;
    if (a.size() != b.size()) return Outcome{false, 0.0, "Schmidt rank changed"};
    double r = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) r = std::max(r, std::abs(a[k] - b[k]));
    return within(r, kTight);
  }));

  const twins::TwinSpace space = twins::twin_space(rho, tol);

  out.push_back(run_check("twins.dimension_law", "input", [&] {
    const int expected = expected_dimension(cls);
    const bool ok = space.dimension == expected && space.well_conditioned && space.singular_value_gap >= 1e6;
    return Outcome{ok, 0.0,
                   "dimension " + std::to_string(space.dimension) + " (expected " + std::to_string(expected) +
                       "), rank gap " + str(space.singular_value_gap)};
  }));

  out.push_back(run_check("twins.analytic_in_oracle", "input", [&] {
    if (std::holds_alternative<mds::BinaryEdge>(cls.kind)) {
      const twins::TwinSpace analytic = twins::analytic_edge_twins(cls);
      return within(twins::subspace_residual(analytic, space), kSubspace);
    }
    if (const auto* v = std::get_if<mds::BellVertex>(&cls.kind)) {
      Rng rng(seed + 2);
      double r = 0.0;
      for (int trial = 0; trial < 5; ++trial) {
        const Matrix a1 = random_hermitian(rng, 2);
        r = std::max(r, twins::distance_to_span({a1, twins::bell_twin_partner(v->index, a1)}, space) / a1.norm());
      }
      return within(r, kSubspace);
    }
    const twins::TwinSpace trivial = twins::span_of({{linalg::identity(2), linalg::identity(2)}});
    return within(twins::subspace_residual(trivial, space), kSubspace);
  }));

  out.push_back(run_check("twins.mixture_equals_simultaneous", "input", [&] {
    std::vector<Matrix> terms;
    for (int k = 0; k < 4; ++k)
      if (w.weight(k) > tol) terms.push_back(mds::bell_state(k).projector);
    return within(twins::subspace_residual(twins::simultaneous_twins(terms, tol), space), kSubspace);
  }));

  out.push_back(run_check("twins.local_unitary_covariance", "input", [&] {
    Rng rng(seed + 3);
    return covariance_outcome(rho, space, rng, tol);
  }));

  out.push_back(run_check("twins.perfect_correlation", "input", [&] { return correlation_outcome(rho, space, tol); }));

  out.push_back(run_check("twins.spectra_agree", "input", [&] { return spectra_outcome(space); }));

  out.push_back(run_check("twins.ppt_matches_weights", "input", [&] {
    const twins::PptVerdict ppt = twins::ppt_separable(rho, tol);
    const double wmax = std::max({w.w0, w.w1, w.w2, w.w3});
    // Bell-diagonal: the smallest partial-transpose eigenvalue is 1/2 - max w.
    const double r = std::abs(ppt.min_eigenvalue - (0.5 - wmax));
    return within(r, kTight);
  }));

  return out;
}

std::vector<PropertyResult> verify_matrix(const Matrix& rho, std::uint64_t seed, double tol) {
  std::vector<PropertyResult> out;
  const twins::TwinSpace space = twins::twin_space(rho, tol);

  out.push_back(run_check("twins.oracle_pairs_are_twins", "input", [&] {
    double r = 0.0;
    for (const auto& p : space.basis) r = std::max(r, twins::is_twin_pair(p, rho, tol).residual);
    return within(r, kSubspace);
  }));
  out.push_back(run_check("twins.local_unitary_covariance", "input", [&] {
    Rng rng(seed + 3);
    return covariance_outcome(rho, space, rng, tol);
  }));
  out.push_back(run_check("twins.perfect_correlation", "input", [&] { return correlation_outcome(rho, space, tol); }));

  if (!mds::is_mds(rho, tol)) return out;

  const mds::CanonicalForm cf = mds::canonicalize(rho, tol);
  out.push_back(run_check("mds.canonicalize_residual", "input", [&] { return within(cf.residual, kSubspace); }));
  out.push_back(run_check("twins.covariance_to_canonical", "input", [&] {
    const twins::TwinSpace target = twins::twin_space(mds::build_T(cf.t), tol);
    return within(twins::subspace_residual(transform(space, cf.u1, cf.u2), target), kSubspace);
  }));
  for (auto& r : verify_bell_diagonal(cf.t, seed, tol)) {
    r.scope = "canonical";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<PropertyResult> verify_pure(const Vector& phi, std::uint64_t seed, double tol) {
  std::vector<PropertyResult> out;
  const schmidt::PureSchmidt ps = schmidt::pure_schmidt(phi, tol);

  out.push_back(run_check("schmidt.pure_reconstruction", "input", [&] {
    return within((schmidt::reconstruct(ps) - phi).norm(), kTight);
  }));
  out.push_back(run_check("schmidt.pure_spectrum", "input", [&] {
    const Matrix rho = linalg::projector(phi);
    const auto e1 = linalg::eigh(linalg::partial_trace(rho, 1)).values;
    const auto e2 = linalg::eigh(linalg::partial_trace(rho, 2)).values;
    double r = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double c = k < ps.schmidt_rank ? ps.coefficients[static_cast<std::size_t>(k)] : 0.0;
      r = std::max({r, std::abs(c * c - e1[k]), std::abs(c * c - e2[k])});
    }
    return within(r, kTight);
  }));
  out.push_back(run_check("schmidt.correlation_operator", "input", [&] {
    const schmidt::AntiunitaryMap ua = schmidt::correlation_operator(ps);
    double r = 0.0;
    for (std::size_t k = 0; k < ps.left.size(); ++k) {
      r = std::max(r, (ua.apply(ps.left[k]) - ps.right[k]).norm());
      const linalg::Complex i(0.0, 1.0);
      r = std::max(r, (ua.apply(i * ps.left[k]) + i * ua.apply(ps.left[k])).norm());
    }
    return within(r, kTight);
  }));
  out.push_back(run_check("twins.pure_state_consistency", "input", [&] {
    Rng rng(seed + 4);
    return pure_consistency_outcome(phi, rng, tol);
  }));

  for (auto& r : verify_matrix(linalg::projector(phi), seed, tol)) out.push_back(std::move(r));
  return out;
}

std::vector<PropertyResult> verify_global(std::uint64_t seed, double tol) {
  std::vector<PropertyResult> out;

  out.push_back(run_check("mds.vertex_sign_table", "sampled", [&] {
    int mismatches = 0;
    for (int mask = 0; mask < 8; ++mask) {
      const mds::TVector t{mask & 1 ? -1.0 : 1.0, mask & 2 ? -1.0 : 1.0, mask & 4 ? -1.0 : 1.0};
      const int negatives = (mask & 1 ? 1 : 0) + (mask & 2 ? 1 : 0) + (mask & 4 ? 1 : 0);
      const mds::MdsClass cls = mds::classify(t, tol);
      if (negatives == 1 || negatives == 3) {
        const auto* v = std::get_if<mds::BellVertex>(&cls.kind);
        int expected = 0;
        if (negatives == 1) expected = (mask & 1) ? 1 : (mask & 2) ? 2 : 3;
        if (v == nullptr || v->index != expected) ++mismatches;
      } else if (!std::holds_alternative<mds::NonState>(cls.kind)) {
        ++mismatches;
      }
    }
    return Outcome{mismatches == 0, static_cast<double>(mismatches), std::to_string(mismatches) + " mismatches"};
  }));

  out.push_back(run_check("mds.grid_agreement", "sampled", [&] {
    int states = 0;
    for (int a = 0; a <= 20; ++a)
      for (int b = 0; b <= 20; ++b)
        for (int c = 0; c <= 20; ++c) {
          const mds::TVector t{-1.0 + 0.1 * a, -1.0 + 0.1 * b, -1.0 + 0.1 * c};
          // Both membership tests run inside; disagreement or a two-unit-axis
          // state throws.
          if (!std::holds_alternative<mds::NonState>(mds::classify(t, tol).kind)) ++states;
        }
    return Outcome{true, 0.0, std::to_string(states) + " of 9261 grid points are states"};
  }));

  out.push_back(run_check("mds.edge_sample_consistency", "sampled", [&] {
    double r = 0.0;
    for (int axis = 1; axis <= 3; ++axis)
      for (auto c : {mds::EdgeCase::A, mds::EdgeCase::B}) {
        const mds::TVector t = mds::sample_tetrahedron(seed + static_cast<std::uint64_t>(axis), mds::EdgeRegion{axis, c, {}});
        const mds::MdsClass cls = mds::classify(t, tol);
        const auto* e = std::get_if<mds::BinaryEdge>(&cls.kind);
        if (e == nullptr || e->axis != axis || e->edge_case != c) return Outcome{false, 0.0, "misclassified edge sample"};
        const double p = t.axis(mds::next_axis(axis, 1)), q = t.axis(mds::next_axis(axis, 2));
        r = std::max(r, c == mds::EdgeCase::A ? std::abs(p + q) : std::abs(p - q));
      }
    return within(r, kExact);
  }));

  out.push_back(run_check("twins.dimension_law_strata", "sampled", [&] {
    std::ostringstream d;
    bool ok = true;
    for (int k = 0; k < 4; ++k) ok &= twins::twin_space(mds::bell_state(k).projector, tol).dimension == 4;
    for (int axis = 1; axis <= 3; ++axis)
      for (auto c : {mds::EdgeCase::A, mds::EdgeCase::B}) {
        const mds::TVector t = mds::sample_tetrahedron(seed + 10 + static_cast<std::uint64_t>(axis), mds::EdgeRegion{axis, c, {}});
        ok &= twins::twin_space(mds::build_T(t), tol).dimension == 2;
      }
    for (std::uint64_t s = 0; s < 10; ++s) {
      const mds::TVector t = mds::sample_tetrahedron(seed + 100 + s, mds::InteriorRegion{});
      ok &= twins::twin_space(mds::build_T(t), tol).dimension == 1;
    }
    return Outcome{ok, 0.0, "4 vertices, 6 edges, 10 interior points"};
  }));

  out.push_back(run_check("twins.bell_table", "sampled", [&] {
    Rng rng(seed + 5);
    double r = 0.0;
    for (int k = 0; k < 4; ++k)
      for (int trial = 0; trial < 5; ++trial) {
        const Matrix a1 = random_hermitian(rng, 2);
        r = std::max(r, twins::is_twin_pair({a1, twins::bell_twin_partner(k, a1)}, mds::bell_state(k).projector, tol).residual);
      }
    return within(r, kTight);
  }));

  out.push_back(run_check("twins.pure_state_consistency", "sampled", [&] {
    Rng rng(seed + 6);
    double r = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Outcome o = pure_consistency_outcome(random_unit_vector(rng, 4), rng, tol);
      r = std::max(r, o.residual);
    }
    return within(r, kSubspace);
  }));

  return out;
}

}  // namespace twinscope::cli
