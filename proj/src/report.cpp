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

#include "predual/report.hpp"

#include <cstdint>
#include <ctime>
#include <utility>

#include "predual/version.hpp"

namespace predual {

Check make_check(std::string name, double residual, double tol) {
  Check c;
  c.name = std::move(name);
  c.residual = residual;
  c.tol = tol;
  c.pass = residual <= tol;
  return c;
}

bool all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char byte : data) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string iso_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json membership_to_json(const MembershipVerdict& v) {
  Json j;
  Json table = Json::array();
  for (const auto& [dim, value] : v.norms_by_dim)
    table.push_back(Json{{"dim", dim}, {"norm", value}});
  j["norms_by_dim"] = std::move(table);
  j["verdict"] = to_string(v.verdict);
  if (v.bound_estimate) j["bound_estimate"] = *v.bound_estimate;
  return j;
}

Json report_to_json(const RunReport& report) {
  Json j;
  j["command"] = report.command;
  j["model"] = report.model_name;
  j["model_hash"] = report.model_hash;
  j["seed"] = report.seed;
  j["version"] = kVersion;
  j["timestamp"] = iso_timestamp_utc();
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"residual", c.residual},
                          {"tol", c.tol},
                          {"pass", c.pass}});
  }
  j["checks"] = std::move(checks);
  if (report.extra.is_object()) {
    for (const auto& [key, value] : report.extra.items()) j[key] = value;
  }
  return j;
}

}  // namespace predual
