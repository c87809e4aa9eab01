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

#include <cstdint>
#include <random>

#include "twinscope/linalg.hpp"

namespace twinscope {

using Rng = std::mt19937_64;

/// Haar-distributed n x n unitary (QR of a complex Ginibre matrix with the
/// diagonal phases of R divided out).
linalg::Matrix random_unitary(Rng& rng, Eigen::Index n);

/// Hermitian matrix with independent standard normal real/imaginary parts.
linalg::Matrix random_hermitian(Rng& rng, Eigen::Index n);

/// Uniformly distributed unit vector in C^n.
linalg::Vector random_unit_vector(Rng& rng, Eigen::Index n);

}  // namespace twinscope
