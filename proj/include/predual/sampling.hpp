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
#include <vector>

#include "predual/algebroid.hpp"
#include "predual/funcalg.hpp"
#include "predual/rng.hpp"
#include "predual/spaces.hpp"

namespace predual {

/// Independent uniform entries in [lo, hi].
std::vector<double> sample_box(std::size_t n, double lo, double hi, Rng& rng);

/// Coordinates shaped to be generic for the given norm tag: entries are
/// +/- u_k * decay(k) with u_k uniform in [0.2, 1.8] and decay 1/(k+1)^2 for
/// p1, 1/(k+1) for p2, and 1 for pinf. The decay keeps p1/p2 partial sums
/// convergent while pinf draws stay O(1).
std::vector<double> sample_profile(NormTag tag, std::size_t n, Rng& rng);

/// Vector in the given space with its tag profile.
Vec sample_vec(const SpaceModel& space, Rng& rng);

/// Bundle point with base coordinates in [-1, 1] and fiber coordinates drawn
/// by the predual tag profile.
BundlePoint sample_point(const AlgebroidModel& model, Rng& rng);

/// Random base-only expression tree of at most the given depth.
ExprPtr random_base_expr(std::size_t base_dim, std::size_t depth, Rng& rng);

/// Random smooth function mixing base and fiber coordinates, with primitives
/// kept tame (scaled arguments) so finite differences stay well conditioned.
SmoothFn random_fn(std::size_t base_dim, std::size_t fiber_dim,
                   std::size_t depth, Rng& rng);

/// Section with polynomial components in m of total degree at most `degree`.
SectionFn random_polynomial_section(std::size_t base_dim,
                                    std::size_t fiber_dim, std::size_t degree,
                                    Rng& rng);

/// Function whose base derivative decays rapidly in the coordinate index:
/// sum_i a_i sin(m_i + b_i m_{p(i)}) + sum_i d_i phi_i with |a_i| ~ (i+1)^-4,
/// couplings |b_i| <= 0.2 to earlier coordinates only, and decaying d_i.
/// Its m-gradient stays norm-bounded under truncation refinement.
SmoothFn random_flat_fn(std::size_t base_dim, std::size_t fiber_dim, Rng& rng);

/// X plus eps times a section whose components vanish at m0 to first order
/// (random linear forms in m - m0). Values at m0 are untouched; first
/// derivatives change.
SectionFn perturb_section_first_order(const SectionFn& x,
                                      const std::vector<double>& m0,
                                      double eps, Rng& rng);

/// X plus eps times a section whose components vanish at m0 to second order
/// (products of two linear forms in m - m0). Values and first derivatives at
/// m0 are untouched.
SectionFn perturb_section_second_order(const SectionFn& x,
                                       const std::vector<double>& m0,
                                       double eps, Rng& rng);

}  // namespace predual
