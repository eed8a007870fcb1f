// Copyright 2026 The predual project
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace predual {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions or out-of-range coordinate index.
struct DimensionError : Error {
  using Error::Error;
};

/// Pairing applied to spaces that are not in duality.
struct RoleError : Error {
  using Error::Error;
};

/// A documented precondition of an operation does not hold for the inputs.
struct PreconditionError : Error {
  using Error::Error;
};

/// A bracket oracle turned out not to be fiber-wise linear.
struct NotLinearError : Error {
  using Error::Error;
};

/// A sharp oracle returned phi-dependent base components where none are allowed.
struct OracleInconsistencyError : Error {
  using Error::Error;
};

/// A model family indexed by dimension is not coherent under truncation.
struct FamilyError : Error {
  using Error::Error;
};

/// Malformed model data (e.g. a non-skew structure tensor).
struct ValidationError : Error {
  using Error::Error;
};

/// Non-finite state encountered during flow integration.
struct BlowupError : Error {
  BlowupError(const std::string& what, std::size_t step)
      : Error(what), step_index(step) {}
  std::size_t step_index;
};

/// Failure writing a report or trajectory file.
struct IoError : Error {
  using Error::Error;
};

}  // namespace predual
