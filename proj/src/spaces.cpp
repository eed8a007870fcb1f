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

#include "predual/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "predual/errors.hpp"

namespace predual {

std::string to_string(NormTag tag) {
  switch (tag) {
    case NormTag::p1: return "p1";
    case NormTag::p2: return "p2";
    case NormTag::pinf: return "pinf";
  }
  throw ValidationError("unknown norm tag");
}

std::string to_string(RoleTag tag) {
  switch (tag) {
    case RoleTag::base: return "base";
    case RoleTag::fiber: return "fiber";
    case RoleTag::predual_fiber: return "predual";
    case RoleTag::dual_fiber: return "dual";
  }
  throw ValidationError("unknown role tag");
}

NormTag norm_tag_from_string(const std::string& s) {
  if (s == "p1") return NormTag::p1;
  if (s == "p2") return NormTag::p2;
  if (s == "pinf") return NormTag::pinf;
  throw ValidationError("unknown norm tag '" + s + "'");
}

NormTag dual_norm_tag(NormTag tag) {
  switch (tag) {
    case NormTag::p1: return NormTag::pinf;
    case NormTag::p2: return NormTag::p2;
    case NormTag::pinf: return NormTag::p1;
  }
  throw ValidationError("unknown norm tag");
}

RoleTag role_tag_from_string(const std::string& s) {
  if (s == "base") return RoleTag::base;
  if (s == "fiber") return RoleTag::fiber;
  if (s == "predual") return RoleTag::predual_fiber;
  if (s == "dual") return RoleTag::dual_fiber;
  throw ValidationError("unknown role tag '" + s + "'");
}

Vec make_vec(std::vector<double> coords, SpaceModel space) {
  if (space.dim < 1) throw DimensionError("space dim must be >= 1");
  if (coords.size() != space.dim)
    throw DimensionError("coords length " + std::to_string(coords.size()) +
                         " does not match space dim " + std::to_string(space.dim));
  return Vec{std::move(coords), space};
}

namespace {

bool roles_pairable(RoleTag a, RoleTag b) {
  if (a == RoleTag::base && b == RoleTag::base) return true;
  auto is_fiber_pair = [](RoleTag u, RoleTag v) {
    return u == RoleTag::fiber &&
           (v == RoleTag::dual_fiber || v == RoleTag::predual_fiber);
  };
  return is_fiber_pair(a, b) || is_fiber_pair(b, a);
}

}  // namespace

double pair_raw(const std::vector<double>& x, const std::vector<double>& mu) {
  if (x.size() != mu.size()) throw DimensionError("pairing length mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * mu[k];
  return s;
}

double pair(const Vec& x, const Vec& mu) {
  if (x.space.dim != mu.space.dim)
    throw DimensionError("pairing dimension mismatch: " +
                         std::to_string(x.space.dim) + " vs " +
                         std::to_string(mu.space.dim));
  if (!roles_pairable(x.space.role_tag, mu.space.role_tag))
    throw RoleError("cannot pair roles " + to_string(x.space.role_tag) +
                    " and " + to_string(mu.space.role_tag));
  return pair_raw(x.coords, mu.coords);
}

double norm(const std::vector<double>& coords, NormTag tag) {
  switch (tag) {
    case NormTag::p1: {
      double s = 0.0;
      for (double c : coords) s += std::abs(c);
      return s;
    }
    case NormTag::p2: {
      double s = 0.0;
      for (double c : coords) s += c * c;
      return std::sqrt(s);
    }
    case NormTag::pinf: {
      double s = 0.0;
      for (double c : coords) s = std::max(s, std::abs(c));
      return s;
    }
  }
  throw ValidationError("unknown norm tag");
}

double norm(const Vec& x, NormTag tag) { return norm(x.coords, tag); }
double norm(const Vec& x) { return norm(x.coords, x.space.norm_tag); }

std::vector<double> truncate(const std::vector<double>& coords, std::size_t n) {
  if (n < 1) throw DimensionError("truncation dim must be >= 1");
  std::vector<double> out(n, 0.0);
  std::copy_n(coords.begin(), std::min(coords.size(), n), out.begin());
  return out;
}

Vec truncate(const Vec& x, std::size_t n) {
  SpaceModel s = x.space;
  s.dim = n;
  return Vec{truncate(x.coords, n), s};
}

std::vector<std::size_t> doubling_dims(std::size_t first, std::size_t last) {
  if (first < 1 || last < first)
    throw PreconditionError("doubling schedule needs 1 <= first <= last");
  std::vector<std::size_t> dims;
  for (std::size_t n = first; n <= last; n *= 2) dims.push_back(n);
  return dims;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::growing: return "growing";
    case Verdict::inconclusive: return "inconclusive";
  }
  throw ValidationError("unknown verdict");
}

MembershipVerdict membership_diagnostic(
    const std::function<std::vector<double>(std::size_t)>& family,
    NormTag target, const std::vector<std::size_t>& dims,
    const MembershipRule& rule) {
  if (dims.size() < 3)
    throw PreconditionError("membership diagnostic needs at least 3 dims");
  for (std::size_t i = 1; i < dims.size(); ++i)
    if (dims[i] <= dims[i - 1])
      throw PreconditionError("membership dims must be strictly increasing");

  MembershipVerdict out;
  out.norms_by_dim.reserve(dims.size());
  for (std::size_t n : dims) {
    std::vector<double> v = family(n);
    if (v.size() != n)
      throw DimensionError("family returned dim " + std::to_string(v.size()) +
                           " for requested dim " + std::to_string(n));
    out.norms_by_dim.emplace_back(n, norm(v, target));
  }

  const std::size_t m = dims.size() - 1;  // increment count
  const double s_last = out.norms_by_dim.back().second;
  const double tiny = rule.tiny_rel * std::max(1.0, std::abs(s_last));

  std::vector<double> inc(m);
  for (std::size_t i = 0; i < m; ++i) {
    inc[i] = out.norms_by_dim[i + 1].second - out.norms_by_dim[i].second;
    if (inc[i] < -tiny) {
      // Norm table not monotone: family is not a nested truncation sequence.
      out.verdict = Verdict::inconclusive;
      return out;
    }
    inc[i] = std::max(inc[i], 0.0);
  }

  bool all_tiny = std::all_of(inc.begin(), inc.end(),
                              [&](double d) { return d <= tiny; });
  if (all_tiny) {
    out.verdict = Verdict::bounded;
    out.bound_estimate = s_last;
    return out;
  }

  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (inc[i] > tiny) {
      ratio_sum += inc[i + 1] / inc[i];
      ++ratio_count;
    }
  }
  const double last_over_first = inc.back() / std::max(inc.front(), tiny);

  if (ratio_count > 0) {
    const double mean_ratio = ratio_sum / static_cast<double>(ratio_count);
    if (last_over_first < rule.bounded_last_over_first &&
        mean_ratio < rule.bounded_mean_ratio) {
      out.verdict = Verdict::bounded;
      out.bound_estimate =
          s_last + inc.back() * mean_ratio / (1.0 - mean_ratio);
      return out;
    }
    if (mean_ratio >= rule.growing_mean_ratio) {
      out.verdict = Verdict::growing;
      return out;
    }
  }
  out.verdict = Verdict::inconclusive;
  return out;
}

}  // namespace predual
