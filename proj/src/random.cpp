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

#include "twinscope/random.hpp"

#include <cmath>

namespace twinscope {

namespace {

linalg::Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  linalg::Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = linalg::Complex(normal(rng), normal(rng));
  return m;
}

}  // namespace

linalg::Matrix random_unitary(Rng& rng, Eigen::Index n) {
  const linalg::Matrix z = ginibre(rng, n, n);
  Eigen::HouseholderQR<linalg::Matrix> qr(z);
  linalg::Matrix q = qr.householderQ();
  const linalg::Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

linalg::Matrix random_hermitian(Rng& rng, Eigen::Index n) {
  const linalg::Matrix z = ginibre(rng, n, n);
  return 0.5 * (z + z.adjoint());
}

linalg::Vector random_unit_vector(Rng& rng, Eigen::Index n) {
  const linalg::Vector z = ginibre(rng, n, 1).col(0);
  return z / z.norm();
}

}  // namespace twinscope
