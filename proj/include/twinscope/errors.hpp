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

#include <stdexcept>
#include <string>

namespace twinscope {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected: wrong shape, not a state, precondition violated.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes disagreed, or a case the theory rules out occurred.
/// Signals a tolerance or logic fault rather than bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace twinscope
