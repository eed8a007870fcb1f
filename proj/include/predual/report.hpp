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

#include <cstdint>
#include <string>
#include <vector>

#include "predual/serialization.hpp"

namespace predual {

/// One named residual check with its pinned tolerance.
struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

Check make_check(std::string name, double residual, double tol);

bool all_pass(const std::vector<Check>& checks);

/// Machine-readable run summary; deterministic for a fixed seed except for
/// the timestamp field.
struct RunReport {
  std::string command;
  std::string model_name;
  std::string model_hash;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  Json extra;  // command-specific payload, merged into the top level
};

/// FNV-1a 64-bit hash as a hex string.
std::string fnv1a_hex(const std::string& data);

/// UTC wall-clock time, ISO 8601.
std::string iso_timestamp_utc();

Json membership_to_json(const MembershipVerdict& v);

Json report_to_json(const RunReport& report);

}  // namespace predual
