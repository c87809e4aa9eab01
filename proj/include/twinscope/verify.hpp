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
#include <string>
#include <vector>

#include "twinscope/linalg.hpp"
#include "twinscope/mds.hpp"

namespace twinscope::cli {

struct PropertyResult {
  std::string name;
  std::string scope;  // "input" or "sampled"
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

/// Invariants evaluated on a Bell-diagonal state given by its t-vector.
std::vector<PropertyResult> verify_bell_diagonal(const mds::TVector& t, std::uint64_t seed, double tol);

/// Invariants evaluated on an arbitrary two-qubit density matrix. MDS inputs
/// are canonicalized and the Bell-diagonal checks run on the result as well.
std::vector<PropertyResult> verify_matrix(const linalg::Matrix& rho, std::uint64_t seed, double tol);

/// Pure-state Schmidt and twin-partner checks on a normalized vector.
std::vector<PropertyResult> verify_pure(const linalg::Vector& phi, std::uint64_t seed, double tol);

/// Input-independent sweeps: sign table, cube grid, seeded pure states.
std::vector<PropertyResult> verify_global(std::uint64_t seed, double tol);

}  // namespace twinscope::cli
