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

// Reference computations written independently of the library internals.
// Tests compare library results against these brute-force counterparts.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

/// 3-vector cross product a x b.
inline std::array<double, 3> cross3(const std::array<double, 3>& a,
                                    const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Full structure tensor for so(3): [e_j, e_k] = sum_i c[i][j][k] e_i with
/// [e_0, e_1] = e_2 cyclically.
inline std::vector<std::vector<std::vector<double>>> so3_tensor() {
  std::vector<std::vector<std::vector<double>>> c(
      3, std::vector<std::vector<double>>(3, std::vector<double>(3, 0.0)));
  c[2][0][1] = 1.0;
  c[2][1][0] = -1.0;
  c[0][1][2] = 1.0;
  c[0][2][1] = -1.0;
  c[1][2][0] = 1.0;
  c[1][0][2] = -1.0;
  return c;
}

/// Full structure tensor for sl(2) in the (h, e, f) basis: [h, e] = 2e,
/// [h, f] = -2f, [e, f] = h.
inline std::vector<std::vector<std::vector<double>>> sl2_tensor() {
  std::vector<std::vector<std::vector<double>>> c(
      3, std::vector<std::vector<double>>(3, std::vector<double>(3, 0.0)));
  c[1][0][1] = 2.0;
  c[1][1][0] = -2.0;
  c[2][0][2] = -2.0;
  c[2][2][0] = 2.0;
  c[0][1][2] = 1.0;
  c[0][2][1] = -1.0;
  return c;
}

/// Brute-force bracket of constant fiber vectors from a full tensor.
inline std::vector<double> bracket_via_tensor(
    const std::vector<std::vector<std::vector<double>>>& c,
    const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = c.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i] += c[i][j][k] * x[j] * y[k];
  return out;
}

/// Partial sum of the p-series sum_{k=1..n} k^-s.
inline double p_series(double s, std::size_t n) {
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k) acc += std::pow(static_cast<double>(k), -s);
  return acc;
}

/// pi^2 / 6, the full sum of k^-2.
inline double zeta2() { return std::acos(-1.0) * std::acos(-1.0) / 6.0; }

/// One classical RK4 step of y' = rhs(y).
template <typename Rhs>
std::vector<double> rk4_step(const Rhs& rhs, std::vector<double> y, double h) {
  const std::size_t n = y.size();
  auto axpy = [n](const std::vector<double>& a, double c,
                  const std::vector<double>& b) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + c * b[i];
    return r;
  };
  std::vector<double> k1 = rhs(y);
  std::vector<double> k2 = rhs(axpy(y, h / 2.0, k1));
  std::vector<double> k3 = rhs(axpy(y, h / 2.0, k2));
  std::vector<double> k4 = rhs(axpy(y, h, k3));
  for (std::size_t i = 0; i < n; ++i)
    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return y;
}

}  // namespace oracle
