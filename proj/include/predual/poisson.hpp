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
#include <vector>

#include "predual/algebroid.hpp"
#include "predual/funcalg.hpp"
#include "predual/rng.hpp"
#include "predual/spaces.hpp"

namespace predual {

/// Covector atom at a bundle point: mu pairs with base velocities, x pairs
/// with fiber covelocities (x is the fiber-slot derivative of a function).
struct CotangentAtom {
  BundlePoint base_pt;
  Vec mu;  // dual of the base
  Vec x;   // fiber
};

/// Tangent atom at a bundle point: v is a base velocity, psi a fiber-slot
/// velocity living in dual-of-fiber coordinates. Predual membership of psi is
/// a diagnostic, never a type constraint.
struct TangentAtom {
  BundlePoint base_pt;
  Vec v;    // base
  Vec psi;  // dual of the fiber
};

/// Covector atom read off an exact jet.
CotangentAtom cotangent_of_jet(const BundlePoint& pt, const Jet1& j);

/// Duality pairing <(mu, x), (v, psi)> = <mu, v> + <psi, x>.
double pair_atoms(const CotangentAtom& c, const TangentAtom& t);

template <typename S>
S dot_g(const std::vector<S>& a, const std::vector<S>& b) {
  S acc = lift<S>(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

/// Bracket value from jet parts: (<a(x_f), mu_g> - <a(x_g), mu_f>) +
/// <C_m(x_f, x_g), phi>. Exchanging f and g negates the value bitwise.
template <typename S>
S bracket_from_parts(const AlgebroidModel& model, const std::vector<S>& m,
                     const std::vector<S>& phi, const std::vector<S>& mu_f,
                     const std::vector<S>& x_f, const std::vector<S>& mu_g,
                     const std::vector<S>& x_g) {
  const std::vector<S> af = anchor_apply_g<S>(model.anchor, m, x_f);
  const std::vector<S> ag = anchor_apply_g<S>(model.anchor, m, x_g);
  const S t1 = dot_g<S>(af, mu_g);
  const S t2 = dot_g<S>(ag, mu_f);
  const std::vector<S> c = structure_apply_g<S>(model.structure, m, x_f, x_g);
  const S t3 = dot_g<S>(c, phi);
  return (t1 - t2) + t3;
}

/// Linear Poisson bracket of two functions at (m, phi), generic scalar.
template <typename S>
S poisson_bracket_g(const AlgebroidModel& model, const SmoothFn& f,
                    const SmoothFn& g, const std::vector<S>& m,
                    const std::vector<S>& phi) {
  const JetG<S> jf = jet_generic<S>(f, m, phi);
  const JetG<S> jg = jet_generic<S>(g, m, phi);
  return bracket_from_parts<S>(model, m, phi, jf.d_m, jf.d_phi, jg.d_m,
                               jg.d_phi);
}

/// {f, g}(pt) for the linear Poisson structure of the model.
double poisson_bracket(const AlgebroidModel& model, const SmoothFn& f,
                       const SmoothFn& g, const BundlePoint& pt);

/// Exact first jet of (m, phi) -> {f, g}(m, phi) at pt.
Jet1 poisson_bracket_jet(const AlgebroidModel& model, const SmoothFn& f,
                         const SmoothFn& g, const BundlePoint& pt);

/// Bundle map sharp(mu, x) = (-a(x), a*(mu) - ad*_x phi) at the atom's point.
TangentAtom sharp(const AlgebroidModel& model, const CotangentAtom& atom);

/// Residuals of the three structural bracket relations at pt:
/// {f pull, g pull} = 0, {lambda_X, f pull} = (a(X)f) pull, and
/// {lambda_X, lambda_Y} = lambda_[X,Y]. f and g must be base-only.
struct RelationResiduals {
  double pull_pull = 0.0;
  double lambda_pull = 0.0;
  double lambda_lambda = 0.0;
};

RelationResiduals structural_relations_check(const AlgebroidModel& model,
                                             const SectionFn& X,
                                             const SectionFn& Y,
                                             const SmoothFn& f_base,
                                             const SmoothFn& g_base,
                                             const BundlePoint& pt);

/// |{{f,g},h} + {{g,h},f} + {{h,f},g}| at pt, each outer bracket taken with
/// the exact jet of the inner one.
double jacobi_check_functions(const AlgebroidModel& model, const SmoothFn& f,
                              const SmoothFn& g, const SmoothFn& h,
                              const BundlePoint& pt);

/// Max defect of F(m, a phi + b psi) = a F(m, phi) + b F(m, psi) over trials.
double fiber_linearity_probe(
    const std::function<double(const std::vector<double>&,
                               const std::vector<double>&)>& fn,
    const std::vector<double>& m, std::size_t fiber_dim, std::size_t trials,
    Rng& rng);

/// Checks that (m, phi) -> {lambda_X, lambda_Y} is fiber-wise linear within
/// tol; returns the max defect. A product lambda_X * lambda_Y must fail.
double linearity_check(const AlgebroidModel& model, const SectionFn& X,
                       const SectionFn& Y, const std::vector<double>& m,
                       Rng& rng, std::size_t trials = 20);

/// A model family indexed by truncation dimension N; instantiate(N) must
/// return a model with base and fiber dimension N and tags independent of N.
/// mu_profile overrides the covector sampling profile used by the predual
/// condition diagnostic (default: conjugate of the base tag).
struct ModelFamily {
  std::string name;
  std::function<AlgebroidModel(std::size_t)> instantiate;
  std::optional<NormTag> mu_profile;
};

/// Truncation family N -> a*(mu|_N) coordinates, for membership diagnostics.
std::function<std::vector<double>(std::size_t)> anchor_dual_family(
    const ModelFamily& family, std::vector<double> mu_full);

/// Truncation family N -> ad*_{x|_N}(phi|_N) coordinates.
std::function<std::vector<double>(std::size_t)> ad_star_family(
    const ModelFamily& family, std::vector<double> x_full,
    std::vector<double> phi_full);

/// Aggregated verdicts for the two predual-invariance conditions behind the
/// Poisson-manifold statement: a*(mu) stays in the predual and ad*_x does not
/// push phi out of it.
struct ConditionReport {
  MembershipVerdict anchor_dual_verdict;
  MembershipVerdict ad_star_verdict;
  bool is_poisson_manifold = false;
};

/// Draws covectors/sections coherently at the largest dimension, truncates
/// down the schedule, and aggregates membership verdicts per condition:
/// bounded only if every draw is bounded, growing if any draw grows.
ConditionReport predual_condition_diagnostic(
    const ModelFamily& family, const std::vector<std::size_t>& dims, Rng& rng,
    std::size_t draws = 16, const MembershipRule& rule = MembershipRule{});

/// Weak symplectic form omega((v1, psi1), (v2, psi2)) = <psi1, v2> -
/// <psi2, v1> on a model whose fiber coincides with its base (tangent-type
/// models); both atoms must sit at pt.
double omega_eval(const BundlePoint& pt, const TangentAtom& t1,
                  const TangentAtom& t2);

/// flat(v, psi) = (psi, -v); requires base dim == fiber dim.
CotangentAtom omega_flat(const BundlePoint& pt, const TangentAtom& t);

/// sharp_omega(mu, x) = (-x, mu); exact inverse of omega_flat.
TangentAtom omega_sharp(const BundlePoint& pt, const CotangentAtom& c);

/// Extended bracket -<df/dm, dg/dphi> + <dg/dm, df/dphi> at pt, defined for
/// all smooth functions regardless of flat membership.
double omega_bracket(const SmoothFn& f, const SmoothFn& g,
                     const BundlePoint& pt);

/// Norm-growth diagnostic for the base differential df/dm at pt: the covector
/// is computed once and its truncations are measured along dims in the
/// conjugate norm of the base tag, i.e. the predual-of-base norm family.
MembershipVerdict flat_membership(const SmoothFn& f, const BundlePoint& pt,
                                  const std::vector<std::size_t>& dims,
                                  const MembershipRule& rule = MembershipRule{});

/// omega_bracket value plus flat-membership verdicts for both arguments; the
/// warning flag is set when either argument fails the membership diagnostic.
struct OmegaBracketChecked {
  double value = 0.0;
  Verdict f_verdict = Verdict::inconclusive;
  Verdict g_verdict = Verdict::inconclusive;
  bool warning = false;
};

OmegaBracketChecked omega_bracket_checked(
    const SmoothFn& f, const SmoothFn& g, const BundlePoint& pt,
    const std::vector<std::size_t>& dims,
    const MembershipRule& rule = MembershipRule{});

/// |omega_bracket - poisson_bracket| at pt on a tangent-type model (identity
/// anchor, zero structure field).
double coincidence_check(const AlgebroidModel& model, const SmoothFn& f,
                         const SmoothFn& g, const BundlePoint& pt);

}  // namespace predual
