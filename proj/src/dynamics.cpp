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

#include "predual/dynamics.hpp"

#include <cmath>
#include <cstddef>
#include <iomanip>

#include "predual/errors.hpp"
#include "predual/forward.hpp"

namespace predual {

namespace {

struct State {
  std::vector<double> m;
  std::vector<double> phi;
};

State field(const AlgebroidModel& model, const SmoothFn& h, const State& s) {
  const JetG<double> j = jet_generic<double>(h, s.m, s.phi);
  State out;
  out.m = anchor_apply_g<double>(model.anchor, s.m, j.d_phi);
  for (double& c : out.m) c = -c;
  out.phi = anchor_transpose_apply_g<double>(model.anchor, s.m, j.d_m);
  const std::vector<double> adj = ad_star(model, s.m, j.d_phi, s.phi);
  for (std::size_t i = 0; i < out.phi.size(); ++i) out.phi[i] -= adj[i];
  return out;
}

State axpy(const State& y, double h, const State& k) {
  State out = y;
  for (std::size_t i = 0; i < out.m.size(); ++i) out.m[i] += h * k.m[i];
  for (std::size_t i = 0; i < out.phi.size(); ++i) out.phi[i] += h * k.phi[i];
  return out;
}

bool finite(const State& s) {
  for (double c : s.m)
    if (!std::isfinite(c)) return false;
  for (double c : s.phi)
    if (!std::isfinite(c)) return false;
  return true;
}

}  // namespace

TangentAtom hamiltonian_field(const AlgebroidModel& model, const SmoothFn& H,
                              const BundlePoint& pt) {
  const Jet1 j = jet(H, pt);
  return sharp(model, cotangent_of_jet(pt, j));
}

std::string to_string(Integrator method) {
  return method == Integrator::rk4 ? "rk4" : "midpoint";
}

Integrator integrator_from_string(const std::string& s) {
  if (s == "rk4") return Integrator::rk4;
  if (s == "midpoint") return Integrator::midpoint;
  throw ValidationError("unknown integrator: " + s);
}

Trajectory flow(const AlgebroidModel& model, const SmoothFn& H,
                const BundlePoint& pt0, double step, std::size_t n_steps,
                Integrator method) {
  if (!(step > 0.0)) throw PreconditionError("flow needs a positive step");
  if (pt0.m.coords.size() != model.base.dim ||
      pt0.phi.coords.size() != model.fiber.dim) {
    throw DimensionError("initial point does not match model dimensions");
  }
  if (H.base_dim != model.base.dim || H.fiber_dim != model.fiber.dim)
    throw DimensionError("hamiltonian does not match model dimensions");

  Trajectory traj;
  traj.method = method;
  traj.step = step;
  traj.times.reserve(n_steps + 1);
  traj.points.reserve(n_steps + 1);

  State y{pt0.m.coords, pt0.phi.coords};
  const auto push = [&](std::size_t i, const State& s) {
    traj.times.push_back(static_cast<double>(i) * step);
    traj.points.push_back(BundlePoint{Vec{s.m, pt0.m.space},
                                      Vec{s.phi, pt0.phi.space}});
  };
  push(0, y);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    if (method == Integrator::rk4) {
      const State k1 = field(model, H, y);
      const State k2 = field(model, H, axpy(y, 0.5 * step, k1));
      const State k3 = field(model, H, axpy(y, 0.5 * step, k2));
      const State k4 = field(model, H, axpy(y, step, k3));
      State incr = k1;
      for (std::size_t c = 0; c < incr.m.size(); ++c)
        incr.m[c] += 2.0 * k2.m[c] + 2.0 * k3.m[c] + k4.m[c];
      for (std::size_t c = 0; c < incr.phi.size(); ++c)
        incr.phi[c] += 2.0 * k2.phi[c] + 2.0 * k3.phi[c] + k4.phi[c];
      y = axpy(y, step / 6.0, incr);
    } else {
      const State k1 = field(model, H, y);
      const State k2 = field(model, H, axpy(y, 0.5 * step, k1));
      y = axpy(y, step, k2);
    }
    if (!finite(y)) throw BlowupError("flow diverged", i);
    push(i, y);
  }
  return traj;
}

double conserved_drift(const Trajectory& traj, const SmoothFn& F) {
  if (traj.points.empty()) throw PreconditionError("empty trajectory");
  const double f0 = eval(F, traj.points.front());
  double worst = 0.0;
  for (const BundlePoint& pt : traj.points)
    worst = std::max(worst, std::abs(eval(F, pt) - f0));
  return worst;
}

void write_trajectory_csv(
    std::ostream& os, const Trajectory& traj, const SmoothFn& H,
    const std::vector<std::pair<std::string, SmoothFn>>& conserved) {
  if (traj.points.empty()) throw PreconditionError("empty trajectory");
  const std::size_t nb = traj.points.front().m.coords.size();
  const std::size_t nf = traj.points.front().phi.coords.size();
  os << "t";
  for (std::size_t i = 0; i < nb; ++i) os << ",m" << i;
  for (std::size_t j = 0; j < nf; ++j) os << ",phi" << j;
  os << ",H";
  for (const auto& [name, fn] : conserved) os << "," << name;
  os << "\n";
  os << std::setprecision(17);
  for (std::size_t r = 0; r < traj.points.size(); ++r) {
    const BundlePoint& pt = traj.points[r];
    os << traj.times[r];
    for (double c : pt.m.coords) os << "," << c;
    for (double c : pt.phi.coords) os << "," << c;
    os << "," << eval(H, pt);
    for (const auto& [name, fn] : conserved) os << "," << eval(fn, pt);
    os << "\n";
  }
}

}  // namespace predual
