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
#include <map>
#include <string>
#include <vector>

#include "predual/poisson.hpp"
#include "predual/report.hpp"
#include "predual/rng.hpp"

namespace predual {

/// Draw counts for the identity suite; tolerances are pinned per check and
/// can only be widened or narrowed through explicit overrides by name.
struct VerifyOptions {
  std::size_t draws_exact = 500;  // antisymmetry, sharp consistency
  std::size_t draws_props = 200;  // relations, Leibniz, section laws
  std::size_t draws_jacobi = 100;
  std::map<std::string, double> tol_overrides;
};

/// Runs every bracket/algebroid identity on the model with seeded draws and
/// returns one Check per law.
std::vector<Check> identity_suite(const AlgebroidModel& model, Rng& rng,
                                  const VerifyOptions& opts = VerifyOptions{});

}  // namespace predual
