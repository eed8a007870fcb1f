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

#include <cassert>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace predual {

/// Forward-mode scalar: a value plus a vector of partial derivatives.
///
/// An empty derivative vector means "all partials are exactly zero"; arithmetic
/// preserves that case without touching the missing slots, so derivatives that
/// are structurally zero stay zero bit-for-bit. Nesting (Fwd<Fwd<double>>)
/// yields exact second derivatives.
template <typename T>
struct Fwd {
  using value_type = T;

  T v{};
  std::vector<T> d;  // empty == all zero

  Fwd() = default;
  explicit Fwd(T value) : v(std::move(value)) {}
  Fwd(T value, std::vector<T> deriv) : v(std::move(value)), d(std::move(deriv)) {}
};

template <typename T>
inline constexpr bool is_fwd_v = false;
template <typename U>
inline constexpr bool is_fwd_v<Fwd<U>> = true;

/// Embeds a plain double as a scalar of type T with zero derivatives.
template <typename T>
T lift(double c) {
  if constexpr (is_fwd_v<T>) {
    return T(lift<typename T::value_type>(c));
  } else {
    return static_cast<T>(c);
  }
}

/// Unit seed: value with derivative 1 in the given slot out of n.
template <typename T>
Fwd<T> seed(T value, std::size_t n, std::size_t slot) {
  std::vector<T> d(n, lift<T>(0.0));
  d[slot] = lift<T>(1.0);
  return Fwd<T>(std::move(value), std::move(d));
}

/// Innermost double value of a (possibly nested) forward scalar.
inline double value_of(double x) { return x; }
template <typename T>
double value_of(const Fwd<T>& x) {
  return value_of(x.v);
}

template <typename T>
Fwd<T> operator-(const Fwd<T>& a) {
  Fwd<T> r(-a.v);
  r.d.reserve(a.d.size());
  for (const T& ai : a.d) r.d.push_back(-ai);
  return r;
}

template <typename T>
Fwd<T> operator+(const Fwd<T>& a, const Fwd<T>& b) {
  Fwd<T> r(a.v + b.v);
  if (a.d.empty()) {
    r.d = b.d;
  } else if (b.d.empty()) {
    r.d = a.d;
  } else {
    assert(a.d.size() == b.d.size());
    r.d.reserve(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d.push_back(a.d[i] + b.d[i]);
  }
  return r;
}

template <typename T>
Fwd<T> operator-(const Fwd<T>& a, const Fwd<T>& b) {
  Fwd<T> r(a.v - b.v);
  if (a.d.empty()) {
    r.d.reserve(b.d.size());
    for (const T& bi : b.d) r.d.push_back(-bi);
  } else if (b.d.empty()) {
    r.d = a.d;
  } else {
    assert(a.d.size() == b.d.size());
    r.d.reserve(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i) r.d.push_back(a.d[i] - b.d[i]);
  }
  return r;
}

template <typename T>
Fwd<T> operator*(const Fwd<T>& a, const Fwd<T>& b) {
  Fwd<T> r(a.v * b.v);
  if (a.d.empty() && b.d.empty()) return r;
  if (a.d.empty()) {
    r.d.reserve(b.d.size());
    for (const T& bi : b.d) r.d.push_back(a.v * bi);
  } else if (b.d.empty()) {
    r.d.reserve(a.d.size());
    for (const T& ai : a.d) r.d.push_back(ai * b.v);
  } else {
    assert(a.d.size() == b.d.size());
    r.d.reserve(a.d.size());
    for (std::size_t i = 0; i < a.d.size(); ++i)
      r.d.push_back(a.d[i] * b.v + a.v * b.d[i]);
  }
  return r;
}

template <typename T>
Fwd<T> operator+(const Fwd<T>& a, double c) {
  return a + Fwd<T>(lift<T>(c));
}
template <typename T>
Fwd<T> operator*(double c, const Fwd<T>& a) {
  return Fwd<T>(lift<T>(c)) * a;
}

template <typename T>
Fwd<T> sin(const Fwd<T>& x) {
  using std::cos;
  using std::sin;
  Fwd<T> r(sin(x.v));
  if (!x.d.empty()) {
    T c = cos(x.v);
    r.d.reserve(x.d.size());
    for (const T& xi : x.d) r.d.push_back(xi * c);
  }
  return r;
}

template <typename T>
Fwd<T> cos(const Fwd<T>& x) {
  using std::cos;
  using std::sin;
  Fwd<T> r(cos(x.v));
  if (!x.d.empty()) {
    T ms = -sin(x.v);
    r.d.reserve(x.d.size());
    for (const T& xi : x.d) r.d.push_back(xi * ms);
  }
  return r;
}

template <typename T>
Fwd<T> exp(const Fwd<T>& x) {
  using std::exp;
  Fwd<T> r(exp(x.v));
  if (!x.d.empty()) {
    r.d.reserve(x.d.size());
    for (const T& xi : x.d) r.d.push_back(xi * r.v);
  }
  return r;
}

}  // namespace predual
