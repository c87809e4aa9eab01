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

#include <json.hpp>

#include "twinscope/linalg.hpp"

namespace twinscope::cli {

/// Key/value tree of a report; insertion order is preserved.
using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// JSON text with every floating-point value written with 17 significant
/// digits. Non-finite values become the strings "inf", "-inf", "nan".
std::string serialize(const Json& doc);

Json to_json(linalg::Complex z);
Json to_json(const linalg::Matrix& m);
Json to_json(const linalg::Vector& v);
Json to_json(const linalg::RealVector& v);

/// Pauli coefficients (alpha, beta_1, beta_2, beta_3) of a Hermitian 2x2 matrix.
Json pauli_json(const linalg::Matrix& a);

/// Finite doubles pass through; others become strings so the tree stays valid JSON.
Json number(double x);

}  // namespace twinscope::cli
