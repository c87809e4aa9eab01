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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "test_support.hpp"
#include "twinscope/errors.hpp"
#include "twinscope/mds.hpp"
#include "twinscope/random.hpp"

using namespace twinscope;
using namespace twinscope::mds;

namespace {

// Weights straight from the Bell expansion: w_k = <psi_k| T(t) |psi_k>.
std::array<double, 4> oracle_weights(const TVector& t) {
  testing::CMat rho = 0.25 * testing::kron2(testing::sigma(0), testing::sigma(0));
  for (int i = 1; i <= 3; ++i) rho += 0.25 * t.axis(i) * testing::kron2(testing::sigma(i), testing::sigma(i));
  std::array<double, 4> w{};
  for (int k = 0; k < 4; ++k) {
    const Eigen::VectorXcd v = testing::bell_vector(k);
    w[static_cast<std::size_t>(k)] = (v.adjoint() * rho * v)(0, 0).real();
  }
  return w;
}

double min_eig(const testing::CMat& m) {
  return Eigen::SelfAdjointEigenSolver<testing::CMat>(m).eigenvalues().minCoeff();
}

const char* kind_name(const MdsKind& k) {
  if (std::holds_alternative<BellVertex>(k)) return "vertex";
  if (std::holds_alternative<BinaryEdge>(k)) return "edge";
  if (std::holds_alternative<GenericInterior>(k)) return "interior";
  return "nonstate";
}

}  // namespace

TEST_CASE("bell states") {
  for (int k = 0; k < 4; ++k) {
    const BellState b = bell_state(k);
    CHECK((b.vector - testing::bell_vector(k)).norm() < 1e-15);
    CHECK(testing::max_abs(b.projector - b.vector * b.vector.adjoint()) < 1e-15);
    CHECK(testing::max_abs(build_T(bell_t_vector(k)) - b.projector) < 1e-15);
  }
  CHECK(bell_t_vector(1).array() == std::array<double, 3>{-1, 1, 1});
  CHECK(bell_t_vector(0).array() == std::array<double, 3>{-1, -1, -1});
  CHECK_THROWS_AS(bell_state(4), ValidationError);
}

TEST_CASE("weights and t-vectors") {
  const TVector t = t_from_weights({0.0, 0.3, 0.7, 0.0});
  CHECK(t.t1 == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(t.t2 == doctest::Approx(-0.4).epsilon(1e-15));
  CHECK(t.t3 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t_from_weights({1, 0, 0, 0}).array() == std::array<double, 3>{-1, -1, -1});
  const TVector c = t_from_weights({0.25, 0.25, 0.25, 0.25});
  CHECK(std::abs(c.t1) + std::abs(c.t2) + std::abs(c.t3) < 1e-15);

  CHECK(weights_from_t({-1, -1, -1}).array() == std::array<double, 4>{1, 0, 0, 0});
  CHECK(weights_from_t({1, 1, 1}).array() == std::array<double, 4>{-0.5, 0.5, 0.5, 0.5});
  const BellWeights w = weights_from_t({0.4, -0.4, 1});
  CHECK(std::abs(w.w0) < 1e-15);
  CHECK(w.w1 == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(w.w2 == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(std::abs(w.w3) < 1e-15);
}

TEST_CASE("build_T examples") {
  CHECK(testing::max_abs(build_T({0, 0, 0}) - 0.25 * linalg::identity(4)) < 1e-15);
  testing::CMat diagonal_mix = testing::CMat::Zero(4, 4);
  diagonal_mix(0, 0) = 0.5;
  diagonal_mix(3, 3) = 0.5;
  CHECK(testing::max_abs(build_T({0, 0, 1}) - diagonal_mix) < 1e-15);
  CHECK(testing::max_abs(build_T({-1, -1, -1}) - bell_state(0).projector) < 1e-15);
}

TEST_CASE("weights agree with the Bell expansion") {
  Rng rng(5);
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const TVector t{cube(rng), cube(rng), cube(rng)};
    const auto expected = oracle_weights(t);
    const auto got = weights_from_t(t).array();
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got[static_cast<std::size_t>(k)] - expected[static_cast<std::size_t>(k)]) < 1e-14);
    CHECK(testing::max_abs(build_T(t) - testing::bell_mixture(expected)) < 1e-14);
    const TVector back = t_from_weights(weights_from_t(t));
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(back.axis(i) - t.axis(i)) < 1e-14);
  }
}

TEST_CASE("is_state examples") {
  const StateVerdict bad = is_state({1, 1, 1});
  CHECK_FALSE(bad.is_state);
  CHECK(bad.offending_index == 0);
  CHECK(bad.min_weight == doctest::Approx(-0.5));
  CHECK(is_state({-1, -1, -1}).is_state);
  CHECK_FALSE(is_state({0.9, 0.9, 0.9}).is_state);
  CHECK(is_state({0.9, 0.9, 0.9}).min_weight == doctest::Approx((1 - 2.7) / 4));
}

TEST_CASE("classify examples") {
  const MdsClass a = classify({0.4, -0.4, 1});
  const auto* ea = std::get_if<BinaryEdge>(&a.kind);
  REQUIRE(ea != nullptr);
  CHECK(ea->axis == 3);
  CHECK(ea->edge_case == EdgeCase::A);
  CHECK(ea->parameter == doctest::Approx(0.4));
  CHECK(a.weights.w1 == doctest::Approx(0.3));
  CHECK(a.weights.w2 == doctest::Approx(0.7));

  const MdsClass b = classify({0.6, 0.6, -1});
  const auto* eb = std::get_if<BinaryEdge>(&b.kind);
  REQUIRE(eb != nullptr);
  CHECK(eb->axis == 3);
  CHECK(eb->edge_case == EdgeCase::B);
  CHECK(b.weights.w3 == doctest::Approx(0.8));
  CHECK(b.weights.w0 == doctest::Approx(0.2));

  CHECK(std::holds_alternative<GenericInterior>(classify({0.2, 0.1, -0.05}).kind));
  CHECK(std::holds_alternative<NonState>(classify({1, 1, 1}).kind));
  CHECK_FALSE(describe(a).empty());
}

TEST_CASE("vertex sign table") {
  const std::array<std::array<double, 3>, 4> states = {{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {-1, -1, -1}}};
  const int index[] = {1, 2, 3, 0};
  for (int s = 0; s < 4; ++s) {
    const auto& p = states[static_cast<std::size_t>(s)];
    const MdsClass c = classify({p[0], p[1], p[2]});
    const auto* v = std::get_if<BellVertex>(&c.kind);
    REQUIRE(v != nullptr);
    CHECK(v->index == index[s]);
  }
  const std::array<std::array<double, 3>, 4> rejected = {{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  for (const auto& p : rejected) {
    CHECK_FALSE(is_state({p[0], p[1], p[2]}).is_state);
    CHECK(std::holds_alternative<NonState>(classify({p[0], p[1], p[2]}).kind));
  }
}

TEST_CASE("grid: weight test, eigenvalue test and strata agree") {
  const int n = 21;
  int counts[4] = {0, 0, 0, 0};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const TVector t{-1.0 + 2.0 * a / (n - 1), -1.0 + 2.0 * b / (n - 1), -1.0 + 2.0 * c / (n - 1)};
        const bool psd = min_eig(build_T(t)) >= -1e-12;
        StateVerdict v;
        REQUIRE_NOTHROW(v = is_state(t));
        CHECK(v.is_state == psd);
        MdsClass cls;
        REQUIRE_NOTHROW(cls = classify(t));
        const std::string kind = kind_name(cls.kind);
        if (kind == "vertex") ++counts[0];
        if (kind == "edge") ++counts[1];
        if (kind == "interior") ++counts[2];
        if (kind == "nonstate") ++counts[3];
        CHECK((kind == "nonstate") == !psd);
        if (kind == "edge") {
          // exactly two Bell weights survive
          int support = 0;
          for (double w : cls.weights.array()) support += w > 1e-12;
          CHECK(support == 2);
        }
        if (kind == "interior") CHECK(cls.weights.min() > -1e-12);
      }
  CHECK(counts[0] == 4);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
}

TEST_CASE("count-2 saturation cannot reach a state") {
  // Two saturated components force the third to +-1 inside the tetrahedron,
  // so anything else is a non-state.
  CHECK(std::holds_alternative<NonState>(classify({1, 1, 0.5}).kind));
  CHECK(std::holds_alternative<NonState>(classify({-1, 1, 0.0}).kind));
}

TEST_CASE("edge sampler") {
  const TVector a = edge_point(3, EdgeCase::A, 0.6);
  CHECK(a.array() == std::array<double, 3>{-0.6, 0.6, 1.0});
  const TVector b = edge_point(1, EdgeCase::B, 0.25);
  CHECK(b.array() == std::array<double, 3>{-1.0, 0.25, 0.25});
  CHECK_THROWS_AS(edge_point(2, EdgeCase::A, 1.0), ValidationError);

  CHECK(sample_tetrahedron(7, VertexRegion{0}).array() == std::array<double, 3>{-1, -1, -1});
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const TVector in = sample_tetrahedron(seed, InteriorRegion{});
    CHECK(weights_from_t(in).min() > 0.0);
    CHECK(std::holds_alternative<GenericInterior>(classify(in).kind));
    for (int axis = 1; axis <= 3; ++axis)
      for (EdgeCase ec : {EdgeCase::A, EdgeCase::B}) {
        const TVector e = sample_tetrahedron(seed, EdgeRegion{axis, ec, std::nullopt});
        const MdsClass cls = classify(e);
        const auto* edge = std::get_if<BinaryEdge>(&cls.kind);
        REQUIRE(edge != nullptr);
        CHECK(edge->axis == axis);
        CHECK(edge->edge_case == ec);
      }
  }
  // Same seed, same point.
  CHECK(sample_tetrahedron(11, InteriorRegion{}).array() == sample_tetrahedron(11, InteriorRegion{}).array());
}

TEST_CASE("is_mds") {
  for (int k = 0; k < 4; ++k) CHECK(is_mds(bell_state(k).projector));
  testing::CMat plus = testing::CMat::Zero(2, 2);
  plus(0, 0) = 1.0;
  CHECK_FALSE(is_mds(testing::kron2(plus, 0.5 * testing::sigma(0))));
  Rng rng(8);
  std::gamma_distribution<double> g(1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 4> w{};
    double s = 0;
    for (double& x : w) s += (x = g(rng));
    for (double& x : w) x /= s;
    const auto rho = testing::bell_mixture(w);
    CHECK(is_mds(rho));
    const auto local = linalg::tensor(random_unitary(rng, 2), random_unitary(rng, 2));
    CHECK(is_mds(local * rho * local.adjoint()));
  }
}

TEST_CASE("SU(2) lift reproduces the rotation") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const linalg::Matrix u = random_unitary(rng, 2);
    const linalg::RealMatrix r = rotation_of(u);
    CHECK((r * r.transpose() - linalg::RealMatrix::Identity(3, 3)).norm() < 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    const linalg::Matrix lifted = lift_to_su2(r);
    CHECK((rotation_of(lifted) - r).norm() < 1e-12);
    CHECK(lifted.trace().real() >= -1e-14);
    CHECK(std::abs(lifted.determinant() - 1.0) < 1e-12);
  }
}

TEST_CASE("canonicalize examples") {
  const CanonicalForm mixed = canonicalize(0.25 * linalg::identity(4));
  CHECK(mixed.residual < 1e-14);
  CHECK(std::abs(mixed.t.t1) + std::abs(mixed.t.t2) + std::abs(mixed.t.t3) < 1e-14);

  const CanonicalForm fixed = canonicalize(build_T({0.4, -0.4, 1}));
  CHECK(fixed.residual < 1e-12);
  const linalg::Matrix l = linalg::tensor(fixed.u1, fixed.u2);
  CHECK(testing::max_abs(l * build_T({0.4, -0.4, 1}) * l.adjoint() - build_T(fixed.t)) < 1e-12);

  testing::CMat plus = testing::CMat::Zero(2, 2);
  plus(0, 0) = 1.0;
  CHECK_THROWS_AS(canonicalize(testing::kron2(plus, 0.5 * testing::sigma(0))), ValidationError);
}

TEST_CASE("canonicalize round trip") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const TVector t = sample_tetrahedron(static_cast<std::uint64_t>(trial), InteriorRegion{});
    const linalg::Matrix local = linalg::tensor(random_unitary(rng, 2), random_unitary(rng, 2));
    const linalg::Matrix rho = local * build_T(t) * local.adjoint();
    const CanonicalForm cf = canonicalize(rho);
    CHECK(cf.residual <= 1e-9);
    const linalg::Matrix l = linalg::tensor(cf.u1, cf.u2);
    CHECK(testing::max_abs(l * rho * l.adjoint() - build_T(cf.t)) <= 1e-9);
    auto abs_sorted = [](const TVector& v) {
      std::array<double, 3> a{std::abs(v.t1), std::abs(v.t2), std::abs(v.t3)};
      std::sort(a.begin(), a.end());
      return a;
    };
    const auto x = abs_sorted(t), y = abs_sorted(cf.t);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]) < 1e-10);
    // Local unitaries preserve the sign of t1 t2 t3.
    CHECK(t.t1 * t.t2 * t.t3 * cf.t.t1 * cf.t.t2 * cf.t.t3 >= -1e-15);
    CHECK(is_state(cf.t).is_state);
  }
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(next_axis(0, 1), ValidationError);
  CHECK(next_axis(3, 1) == 1);
  CHECK(next_axis(2, 2) == 1);
  CHECK_THROWS_AS(classify({std::nan(""), 0, 0}), ValidationError);
}
