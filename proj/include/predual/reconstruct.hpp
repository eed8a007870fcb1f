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

#include "predual/poisson.hpp"
#include "predual/rng.hpp"

namespace predual {

/// Black-box bracket evaluator {f, g}(pt).
using BracketOracle = std::function<double(const SmoothFn&, const SmoothFn&,
                                           const BundlePoint&)>;

/// Black-box sharp evaluator on cotangent atoms.
using SharpOracle = std::function<TangentAtom(const CotangentAtom&)>;

/// Recovers [X, Y](m) from the bracket of fiber-linear observables by reading
/// {lambda_X, lambda_Y}(m, .) off predual basis covectors. The bracket must
/// be fiber-wise linear at m within 1e-8; otherwise NotLinearError.
Vec recover_bracket(const BracketOracle& bracket, const SectionFn& X,
                    const SectionFn& Y, const Vec& m,
                    const SpaceModel& predual_space);

/// Recovers a(X(m)) as minus the base velocity of sharp at d(lambda_X). The
/// fiber point must not matter: eight draws of phi have to agree to 1e-10,
/// otherwise OracleInconsistencyError.
Vec recover_anchor(const SharpOracle& sharp_oracle, const SectionFn& X,
                   const Vec& m, const SpaceModel& predual_space, Rng& rng);

/// Worst-case residuals of recovering the algebroid data back from its own
/// Poisson bracket and sharp map.
struct RoundtripReport {
  double bracket_residual = 0.0;      // recovered vs direct section bracket
  double anchor_residual = 0.0;       // recovered vs direct anchor values
  double structure_residual = 0.0;    // recovered vs stored C entries
  double perturbation_shift = 0.0;    // anchor under 1st-order perturbations
  double leibniz_residual = 0.0;      // Leibniz law of the recovered bracket
};

RoundtripReport roundtrip_check(const AlgebroidModel& model, Rng& rng,
                                std::size_t draws = 12);

}  // namespace predual
