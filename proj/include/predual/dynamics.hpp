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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "predual/poisson.hpp"

namespace predual {

/// Hamiltonian vector field at pt: sharp applied to the exact jet of H. It
/// satisfies <jet(f, pt), X_H> = {f, H}(pt) for every smooth f.
TangentAtom hamiltonian_field(const AlgebroidModel& model, const SmoothFn& H,
                              const BundlePoint& pt);

enum class Integrator { rk4, midpoint };

std::string to_string(Integrator method);
Integrator integrator_from_string(const std::string& s);

/// Discrete orbit of the Hamiltonian field, including the initial point.
struct Trajectory {
  std::vector<double> times;
  std::vector<BundlePoint> points;
  Integrator method = Integrator::rk4;
  double step = 0.0;
};

/// Explicit fixed-step integration of pt' = hamiltonian_field(model, H, pt).
/// step must be positive; a non-finite coordinate aborts with BlowupError
/// carrying the offending step index.
Trajectory flow(const AlgebroidModel& model, const SmoothFn& H,
                const BundlePoint& pt0, double step, std::size_t n_steps,
                Integrator method = Integrator::rk4);

/// max_t |F(pt_t) - F(pt_0)| along the trajectory.
double conserved_drift(const Trajectory& traj, const SmoothFn& F);

/// CSV rows t, m coordinates, phi coordinates, H, then one column per named
/// conserved quantity; the first line is a header.
void write_trajectory_csv(
    std::ostream& os, const Trajectory& traj, const SmoothFn& H,
    const std::vector<std::pair<std::string, SmoothFn>>& conserved);

}  // namespace predual
