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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace predual {

/// Norm family on a coordinate space: sum, Euclidean, or sup.
enum class NormTag { p1, p2, pinf };

/// Which slot of the bundle picture a space plays.
enum class RoleTag { base, fiber, predual_fiber, dual_fiber };

std::string to_string(NormTag tag);
std::string to_string(RoleTag tag);
NormTag norm_tag_from_string(const std::string& s);
RoleTag role_tag_from_string(const std::string& s);

/// Conjugate norm family: p1 and pinf swap, p2 is self-dual.
NormTag dual_norm_tag(NormTag tag);

/// A finite truncation of a sequence space: dimension plus norm and role tags.
/// All roles are coordinate spaces at truncation; the tags carry the intent.
struct SpaceModel {
  std::size_t dim = 0;
  NormTag norm_tag = NormTag::p2;
  RoleTag role_tag = RoleTag::base;
};

/// Coordinates in a tagged space.
struct Vec {
  std::vector<double> coords;
  SpaceModel space;
};

/// Builds a Vec, checking that the coordinate count matches the space.
Vec make_vec(std::vector<double> coords, SpaceModel space);

/// Coordinate pairing sum x_k * mu_k; checks dimensions and role compatibility.
/// Valid role pairs: base with base (self-dual at truncation), fiber with
/// dual, fiber with predual, in either order.
double pair(const Vec& x, const Vec& mu);

/// Pairing on raw coordinates, no role bookkeeping.
double pair_raw(const std::vector<double>& x, const std::vector<double>& mu);

double norm(const std::vector<double>& coords, NormTag tag);
double norm(const Vec& x, NormTag tag);
double norm(const Vec& x);  // x's own tag

/// First min(dim, n) coordinates kept, zero padding above; n >= 1.
Vec truncate(const Vec& x, std::size_t n);
std::vector<double> truncate(const std::vector<double>& coords, std::size_t n);

/// Doubling schedule first, 2*first, ..., up to and including last.
std::vector<std::size_t> doubling_dims(std::size_t first, std::size_t last);

enum class Verdict { bounded, growing, inconclusive };
std::string to_string(Verdict v);

/// Thresholds for the norm-growth decision. Increments D_i of the target norm
/// over successive dims are compared by their last/first ratio and by the mean
/// of consecutive ratios r_i = D_{i+1}/D_i:
///   bounded       last/first < bounded_last_over_first and mean r < bounded_mean_ratio
///   growing       mean r >= growing_mean_ratio (harmonic-type or worse)
///   inconclusive  otherwise
struct MembershipRule {
  double tiny_rel = 1e-11;              // increments below tiny_rel*max(1,norm) count as zero
  double bounded_last_over_first = 0.1;
  double bounded_mean_ratio = 0.95;
  double growing_mean_ratio = 0.8;
};

/// Outcome of a norm-growth sweep: the norm table, the verdict, and a
/// geometric-tail extrapolation of the limit when bounded.
struct MembershipVerdict {
  std::vector<std::pair<std::size_t, double>> norms_by_dim;
  Verdict verdict = Verdict::inconclusive;
  std::optional<double> bound_estimate;
};

/// Decides asymptotic membership of a family of truncations in the target
/// norm: evaluates the family at each dim, tabulates norms, and applies the
/// rule to the increments. dims needs at least 3 strictly increasing entries.
MembershipVerdict membership_diagnostic(
    const std::function<std::vector<double>(std::size_t)>& family,
    NormTag target, const std::vector<std::size_t>& dims,
    const MembershipRule& rule = {});

}  // namespace predual
