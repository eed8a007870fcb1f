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
#include <optional>
#include <string>
#include <vector>

#include "predual/poisson.hpp"

namespace predual {

/// Lie-Poisson encoding on a one-point base: anchor zero, constant structure
/// tensor c[i][j][k] with [e_j, e_k] = sum_i c[i][j][k] e_i.
AlgebroidModel make_lie_poisson(
    std::string name,
    const std::vector<std::vector<std::vector<double>>>& c);

/// so(3): [e1, e2] = e3 cyclically.
AlgebroidModel make_so3();

/// sl(2) in the (h, e, f) basis: [h,e] = 2e, [h,f] = -2f, [e,f] = h.
AlgebroidModel make_sl2();

/// Tangent-type model at truncation n: identity anchor, zero structure
/// field, p2-tagged base, fiber, and predual.
AlgebroidModel make_precotangent(std::size_t n);

/// Truncation family of make_precotangent; covectors for the predual
/// condition diagnostic are drawn with O(1) entries (pinf profile), the
/// generic shape of dual data that need not decay.
ModelFamily precotangent_family();

/// Diagonal anchor weights for the sequence-triple model.
struct SequenceWeights {
  enum class Kind { harmonic, unit, power };
  Kind kind = Kind::harmonic;
  double exponent = 1.0;  // power kind only: w_k = k^-exponent
};

/// w_k for k = 1..n.
std::vector<double> sequence_weights(const SequenceWeights& w, std::size_t n);

/// p2 base, pinf fiber, p1 predual, anchor diag(w_k), zero structure field.
AlgebroidModel make_sequence_triple(std::size_t n,
                                    const SequenceWeights& w = {});

ModelFamily sequence_triple_family(const SequenceWeights& w = {});

/// Action-type model on a 3d base: anchor a_m(x) = x cross m, structure
/// C(x, y) = y cross x, a genuinely base-dependent anchor.
AlgebroidModel make_so3_action();

/// A named preset: the instantiated model plus, for sequence models, the
/// truncation family behind it.
struct Preset {
  AlgebroidModel model;
  std::optional<ModelFamily> family;
};

/// Parses "so3", "sl2", "so3-action", "precotangent[:N]",
/// "seqtriple[:N][:weights=harmonic|unit|power:p]"; unknown specs throw
/// ValidationError. Defaults: precotangent N = 16, seqtriple N = 32.
Preset parse_preset(const std::string& spec);

}  // namespace predual
