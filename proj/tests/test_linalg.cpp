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

#include <cmath>

#include "test_support.hpp"
#include "twinscope/linalg.hpp"
#include "twinscope/random.hpp"

using namespace twinscope;
using namespace twinscope::linalg;

namespace {

const Complex kI(0.0, 1.0);

int levi_civita(int i, int j, int m) {
  if (i == j || j == m || i == m) return 0;
  return ((i == 1 && j == 2) || (i == 2 && j == 3) || (i == 3 && j == 1)) ? 1 : -1;
}

Matrix singlet_projector() {
  Vector psi = Vector::Zero(4);
  psi[1] = 1.0 / std::sqrt(2.0);
  psi[2] = -1.0 / std::sqrt(2.0);
  return projector(psi);
}

}  // namespace

TEST_CASE("tensor products of Paulis") {
  CHECK(testing::max_abs(tensor(pauli(0), pauli(0)) - Matrix::Identity(4, 4)) == 0.0);

  Matrix zz = Matrix::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  CHECK(testing::max_abs(tensor(pauli(3), pauli(3)) - zz) == 0.0);

  Vector ket00 = Vector::Zero(4), ket11 = Vector::Zero(4);
  ket00[0] = 1.0;
  ket11[3] = 1.0;
  CHECK((tensor(pauli(1), pauli(1)) * ket00 - ket11).norm() == 0.0);

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 2);
    CHECK(testing::max_abs(tensor(a, b) - testing::kron2(a, b)) < 1e-14);
  }
}

TEST_CASE("partial trace") {
  CHECK(testing::max_abs(partial_trace(singlet_projector(), 1) - 0.5 * identity(2)) < 1e-15);

  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 2);
    CHECK(testing::max_abs(partial_trace(tensor(a, b), 1) - a * b.trace()) < 1e-12);
    CHECK(testing::max_abs(partial_trace(tensor(a, b), 2) - b * a.trace()) < 1e-12);
  }

  // Pauli matrices are traceless, so every Bell-diagonal operator has I/2 marginals.
  for (double t1 : {-1.0, -0.3, 0.5}) {
    Matrix t = identity(4);
    t += t1 * tensor(pauli(1), pauli(1)) + 0.2 * tensor(pauli(2), pauli(2)) - 0.7 * tensor(pauli(3), pauli(3));
    t *= 0.25;
    CHECK(testing::max_abs(partial_trace(t, 2) - 0.5 * identity(2)) < 1e-15);
  }

  CHECK_THROWS_AS(partial_trace(identity(2), 1), ValidationError);
  CHECK_THROWS_AS(partial_trace(identity(4), 3), ValidationError);
}

TEST_CASE("hilbert-schmidt inner product") {
  CHECK(std::abs(hs_inner(pauli(1), pauli(1)) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(hs_inner(pauli(1), pauli(2))) < 1e-15);
  const Matrix half = identity(2) / std::sqrt(2.0);
  CHECK(std::abs(hs_inner(half, half) - Complex(1.0, 0.0)) < 1e-15);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex g = hs_inner(pauli(i) / std::sqrt(2.0), pauli(j) / std::sqrt(2.0));
      CHECK(std::abs(g - Complex(i == j ? 1.0 : 0.0, 0.0)) < 1e-15);
    }

  Rng rng(3);
  const Matrix a = random_unitary(rng, 3), b = random_hermitian(rng, 3);
  CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-13);
  CHECK(std::abs(hs_inner(a, a).imag()) < 1e-13);
  CHECK_THROWS_AS(hs_inner(identity(2), identity(3)), ValidationError);
}

TEST_CASE("pauli algebra") {
  CHECK(testing::max_abs(pauli(3) - testing::sigma(3)) == 0.0);
  CHECK(testing::max_abs(pauli(0) - identity(2)) == 0.0);
  CHECK(testing::max_abs(pauli(1) * pauli(2) - kI * pauli(3)) < 1e-15);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Matrix expected = (i == j ? 1.0 : 0.0) * identity(2);
      for (int m = 1; m <= 3; ++m) expected += kI * static_cast<double>(levi_civita(i, j, m)) * pauli(m);
      CHECK(testing::max_abs(pauli(i) * pauli(j) - expected) < 1e-12);
    }
  for (int i = 0; i < 4; ++i) {
    CHECK(check_hermitian(pauli(i), 0.0).passed());
    CHECK(testing::max_abs(pauli(i) * pauli(i).adjoint() - identity(2)) == 0.0);
    if (i > 0) CHECK(std::abs(pauli(i).trace()) == 0.0);
  }
  CHECK_THROWS_AS(pauli(4), ValidationError);
  CHECK_THROWS_AS(pauli(-1), ValidationError);
}

TEST_CASE("eigh") {
  const EigenDecomposition z = eigh(pauli(3));
  CHECK(z.values[0] == doctest::Approx(1.0));
  CHECK(z.values[1] == doctest::Approx(-1.0));
  CHECK(std::abs(z.vectors(0, 0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(z.vectors(1, 1) - Complex(1.0, 0.0)) < 1e-15);

  const EigenDecomposition half = eigh(0.5 * identity(2));
  CHECK(half.values[0] == doctest::Approx(0.5));
  CHECK(half.values[1] == doctest::Approx(0.5));

  // 0.3 T1 + 0.7 T2, the Bell-diagonal point t = (0.4, -0.4, 1): the Bell
  // projectors are orthogonal, so the spectrum is the weights.
  const Matrix mix = testing::bell_mixture({0.0, 0.3, 0.7, 0.0});
  const EigenDecomposition e = eigh(mix);
  CHECK(e.values[0] == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(std::abs(e.values[2]) < 1e-15);
  CHECK(std::abs(e.values[3]) < 1e-15);

  Matrix not_hermitian = pauli(1);
  not_hermitian(0, 1) = 2.0;
  CHECK_THROWS_AS(eigh(not_hermitian), ValidationError);
}

TEST_CASE("eigh and svd reconstruct random matrices") {
  Rng rng(2024);
  for (Eigen::Index n : {1, 2, 3, 4, 8, 16, 32}) {
    const Matrix h = random_hermitian(rng, n);
    const EigenDecomposition e = eigh(h);
    CHECK(testing::max_abs(e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint() - h) < 1e-10);
    CHECK(testing::max_abs(e.vectors.adjoint() * e.vectors - identity(n)) < 1e-10);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);

    const Matrix m = random_unitary(rng, n) * random_hermitian(rng, n);
    const SvdResult s = svd(m);
    CHECK(testing::max_abs(s.u * s.singular_values.cast<Complex>().asDiagonal() * s.v.adjoint() - m) < 1e-10);
    CHECK(testing::max_abs(s.u.adjoint() * s.u - identity(n)) < 1e-10);
    CHECK(testing::max_abs(s.v.adjoint() * s.v - identity(n)) < 1e-10);
    for (Eigen::Index k = 1; k < n; ++k) CHECK(s.singular_values[k - 1] >= s.singular_values[k]);
  }
}

TEST_CASE("svd examples") {
  const SvdResult id = svd(identity(2));
  CHECK(id.singular_values[0] == doctest::Approx(1.0));
  CHECK(id.singular_values[1] == doctest::Approx(1.0));

  Matrix singlet(2, 2);
  singlet << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
  const SvdResult s = svd(singlet);
  CHECK(s.singular_values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(s.singular_values[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

  const SvdResult zero = svd(Matrix::Zero(2, 2));
  CHECK(zero.singular_values[0] == 0.0);
  CHECK(zero.singular_values[1] == 0.0);
}

TEST_CASE("real nullspace") {
  const Nullspace all = real_nullspace(RealMatrix::Zero(2, 2));
  CHECK(all.basis.size() == 2);
  CHECK(real_nullspace(RealMatrix::Identity(3, 3)).basis.empty());

  Rng rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    // 32 x 8 of rank 5 by construction.
    RealMatrix left(32, 5), right(5, 8);
    for (Eigen::Index i = 0; i < left.size(); ++i) left.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < right.size(); ++i) right.data()[i] = normal(rng);
    const RealMatrix m = left * right;
    const Nullspace ns = real_nullspace(m);
    REQUIRE(ns.basis.size() == 3);
    CHECK(testing::elimination_rank(m, 1e-9) == 5);
    CHECK(ns.well_conditioned);
    CHECK(ns.rank_gap > 1e6);
    RealMatrix gram(3, 3);
    for (std::size_t a = 0; a < 3; ++a) {
      CHECK((m * ns.basis[a]).norm() <= 1e-9 * m.norm());
      for (std::size_t b = 0; b < 3; ++b)
        gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = ns.basis[a].dot(ns.basis[b]);
    }
    CHECK((gram - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("real nullspace flags a fragile rank decision") {
  RealMatrix m = RealMatrix::Zero(3, 3);
  m.diagonal() << 1.0, 1e-8, 0.0;  // 1e-8 sits within two decades of the 1e-9 cut
  const Nullspace ns = real_nullspace(m);
  CHECK(ns.basis.size() == 1);
  CHECK_FALSE(ns.well_conditioned);

  m.diagonal() << 1.0, 1e-5, 0.0;
  CHECK(real_nullspace(m).well_conditioned);
}

TEST_CASE("state checks") {
  CHECK(check_state(singlet_projector(), 1e-12).valid);
  CHECK_FALSE(check_state(identity(4), 1e-12).valid);
  Matrix negative = 0.25 * identity(4);
  negative(0, 0) = -0.25;
  negative(1, 1) = 0.75;
  CHECK_FALSE(check_state(negative, 1e-12).valid);
  CHECK_THROWS_AS(require_state(negative, 1e-12, "test"), ValidationError);
}

TEST_CASE("partial transpose of the singlet") {
  const EigenDecomposition e = eigh(partial_transpose(singlet_projector()));
  CHECK(e.values[3] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(e.values[0] == doctest::Approx(0.5).epsilon(1e-14));
}
