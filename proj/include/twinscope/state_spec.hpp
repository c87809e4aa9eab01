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

#include <string>
#include <string_view>
#include <variant>

#include "twinscope/linalg.hpp"
#include "twinscope/mds.hpp"

namespace twinscope::cli {

struct MatrixState {
  linalg::Matrix rho;
};

struct PureState {
  linalg::Vector phi;
};

/// One way of naming a two-qubit state on the command line.
struct StateSpec {
  std::variant<mds::TVector, mds::BellWeights, MatrixState, PureState> value;
  std::string source;  // file path for file-backed specs, empty otherwise
};

/// Tolerance for validating loaded matrices and amplitudes.
inline constexpr double kInputTol = 1e-8;

/// Parses `re+imi`, `re-imi`, `re`, or `imi` forms.
linalg::Complex parse_complex(std::string_view token);

/// Comma-separated list of reals, e.g. "0.4,-0.4,1".
std::vector<double> parse_real_list(std::string_view text);

/// Parses the plain-text state format: a header line `matrix 4 4` or `pure 4`,
/// followed by whitespace-separated complex entries (row-major for matrices).
StateSpec parse_state_text(std::string_view text);
StateSpec load_state_file(const std::string& path);

/// Throws ValidationError unless the spec names a physical state: weights sum
/// to one, matrices are density matrices, amplitudes are normalized. Bell
/// coordinates outside the tetrahedron are rejected too.
void validate(const StateSpec& spec, double tol = kInputTol);

linalg::Matrix density_matrix(const StateSpec& spec);

std::string kind_name(const StateSpec& spec);

}  // namespace twinscope::cli
