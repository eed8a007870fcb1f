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

#include "predual/poisson.hpp"

#include <cmath>
#include <cstddef>
#include <utility>

#include "predual/errors.hpp"
#include "predual/forward.hpp"
#include "predual/sampling.hpp"

namespace predual {

namespace {

void check_point(const AlgebroidModel& model, const BundlePoint& pt) {
  if (pt.m.coords.size() != model.base.dim ||
      pt.phi.coords.size() != model.fiber.dim) {
    throw DimensionError("bundle point does not match model dimensions");
  }
}

void check_fn(const AlgebroidModel& model, const SmoothFn& f) {
  if (f.base_dim != model.base.dim || f.fiber_dim != model.fiber.dim)
    throw DimensionError("function dimensions do not match model");
}

void check_section(const AlgebroidModel& model, const SectionFn& X) {
  if (X.base_dim != model.base.dim ||
      X.components.size() != model.fiber.dim) {
    throw DimensionError("section dimensions do not match model");
  }
}

SpaceModel dual_of(const SpaceModel& s, RoleTag role) {
  return SpaceModel{s.dim, dual_norm_tag(s.norm_tag), role};
}

}  // namespace

CotangentAtom cotangent_of_jet(const BundlePoint& pt, const Jet1& j) {
  return CotangentAtom{pt, j.d_m, j.d_phi};
}

double pair_atoms(const CotangentAtom& c, const TangentAtom& t) {
  return pair(c.mu, t.v) + pair(t.psi, c.x);
}

double poisson_bracket(const AlgebroidModel& model, const SmoothFn& f,
                       const SmoothFn& g, const BundlePoint& pt) {
  check_point(model, pt);
  check_fn(model, f);
  check_fn(model, g);
  return poisson_bracket_g<double>(model, f, g, pt.m.coords, pt.phi.coords);
}

Jet1 poisson_bracket_jet(const AlgebroidModel& model, const SmoothFn& f,
                         const SmoothFn& g, const BundlePoint& pt) {
  check_point(model, pt);
  check_fn(model, f);
  check_fn(model, g);
  const std::size_t nb = model.base.dim;
  const std::size_t nf = model.fiber.dim;
  const std::size_t n = nb + nf;
  std::vector<Fwd<double>> m;
  m.reserve(nb);
  for (std::size_t i = 0; i < nb; ++i)
    m.push_back(seed<double>(pt.m.coords[i], n, i));
  std::vector<Fwd<double>> phi;
  phi.reserve(nf);
  for (std::size_t j = 0; j < nf; ++j)
    phi.push_back(seed<double>(pt.phi.coords[j], n, nb + j));
  const Fwd<double> r = poisson_bracket_g<Fwd<double>>(model, f, g, m, phi);
  Jet1 out;
  out.value = r.v;
  std::vector<double> dm(nb, 0.0);
  std::vector<double> dphi(nf, 0.0);
  if (!r.d.empty()) {
    for (std::size_t i = 0; i < nb; ++i) dm[i] = r.d[i];
    for (std::size_t j = 0; j < nf; ++j) dphi[j] = r.d[nb + j];
  }
  out.d_m = make_vec(std::move(dm), dual_of(model.base, RoleTag::base));
  out.d_phi = make_vec(std::move(dphi), SpaceModel{nf, model.fiber.norm_tag,
                                                   RoleTag::fiber});
  return out;
}

TangentAtom sharp(const AlgebroidModel& model, const CotangentAtom& atom) {
  check_point(model, atom.base_pt);
  if (atom.mu.coords.size() != model.base.dim)
    throw DimensionError("sharp needs a base-dual mu slot");
  if (atom.x.coords.size() != model.fiber.dim)
    throw DimensionError("sharp needs a fiber x slot");
  const std::vector<double>& m = atom.base_pt.m.coords;
  const std::vector<double>& phi = atom.base_pt.phi.coords;
  std::vector<double> v =
      anchor_apply_g<double>(model.anchor, m, atom.x.coords);
  for (double& c : v) c = -c;
  std::vector<double> psi =
      anchor_transpose_apply_g<double>(model.anchor, m, atom.mu.coords);
  const std::vector<double> adj = ad_star(model, m, atom.x.coords, phi);
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] -= adj[i];
  return TangentAtom{atom.base_pt, make_vec(std::move(v), model.base),
                     make_vec(std::move(psi),
                              dual_of(model.fiber, RoleTag::dual_fiber))};
}

RelationResiduals structural_relations_check(const AlgebroidModel& model,
                                             const SectionFn& X,
                                             const SectionFn& Y,
                                             const SmoothFn& f_base,
                                             const SmoothFn& g_base,
                                             const BundlePoint& pt) {
  check_point(model, pt);
  check_section(model, X);
  check_section(model, Y);
  check_fn(model, f_base);
  check_fn(model, g_base);
  if (f_base.shape != FiberShape::fiber_constant ||
      g_base.shape != FiberShape::fiber_constant) {
    throw PreconditionError("relation check needs base-only functions");
  }
  const SmoothFn pf = pullback(f_base);
  const SmoothFn pg = pullback(g_base);
  const SmoothFn lx = lambda_of_section(X);
  const SmoothFn ly = lambda_of_section(Y);
  RelationResiduals out;
  out.pull_pull = std::abs(poisson_bracket(model, pf, pg, pt));

  const double lhs = poisson_bracket(model, lx, pf, pt);
  const Jet1 jf = jet(f_base, pt);
  const std::vector<double> xm = section_value<double>(X, pt.m.coords);
  const std::vector<double> ax =
      anchor_apply_g<double>(model.anchor, pt.m.coords, xm);
  out.lambda_pull = std::abs(lhs - pair_raw(ax, jf.d_m.coords));

  const double lxy = poisson_bracket(model, lx, ly, pt);
  const std::vector<double> w =
      bracket_sections_g<double>(model, X, Y, pt.m.coords);
  out.lambda_lambda = std::abs(lxy - pair_raw(pt.phi.coords, w));
  return out;
}

double jacobi_check_functions(const AlgebroidModel& model, const SmoothFn& f,
                              const SmoothFn& g, const SmoothFn& h,
                              const BundlePoint& pt) {
  check_point(model, pt);
  check_fn(model, f);
  check_fn(model, g);
  check_fn(model, h);
  const auto term = [&](const SmoothFn& a, const SmoothFn& b,
                        const SmoothFn& c) {
    const Jet1 jab = poisson_bracket_jet(model, a, b, pt);
    const Jet1 jc = jet(c, pt);
    return bracket_from_parts<double>(model, pt.m.coords, pt.phi.coords,
                                      jab.d_m.coords, jab.d_phi.coords,
                                      jc.d_m.coords, jc.d_phi.coords);
  };
  return std::abs(term(f, g, h) + term(g, h, f) + term(h, f, g));
}

double fiber_linearity_probe(
    const std::function<double(const std::vector<double>&,
                               const std::vector<double>&)>& fn,
    const std::vector<double>& m, std::size_t fiber_dim, std::size_t trials,
    Rng& rng) {
  double worst = std::abs(fn(m, std::vector<double>(fiber_dim, 0.0)));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> phi = sample_box(fiber_dim, -1.0, 1.0, rng);
    const std::vector<double> psi = sample_box(fiber_dim, -1.0, 1.0, rng);
    const double a = rng.uniform(-2.0, 2.0);
    const double b = rng.uniform(-2.0, 2.0);
    std::vector<double> combo(fiber_dim);
    for (std::size_t k = 0; k < fiber_dim; ++k)
      combo[k] = a * phi[k] + b * psi[k];
    const double lhs = fn(m, combo);
    const double rhs = a * fn(m, phi) + b * fn(m, psi);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double linearity_check(const AlgebroidModel& model, const SectionFn& X,
                       const SectionFn& Y, const std::vector<double>& m,
                       Rng& rng, std::size_t trials) {
  check_section(model, X);
  check_section(model, Y);
  if (m.size() != model.base.dim)
    throw DimensionError("point dimension does not match model base");
  const SmoothFn lx = lambda_of_section(X);
  const SmoothFn ly = lambda_of_section(Y);
  const auto fn = [&](const std::vector<double>& mv,
                      const std::vector<double>& phiv) {
    return poisson_bracket_g<double>(model, lx, ly, mv, phiv);
  };
  return fiber_linearity_probe(fn, m, model.fiber.dim, trials, rng);
}

namespace {

AlgebroidModel instantiate_checked(const ModelFamily& family, std::size_t n) {
  AlgebroidModel model = family.instantiate(n);
  if (model.base.dim != n || model.fiber.dim != n) {
    throw FamilyError("family " + family.name +
                      " must truncate base and fiber to dimension " +
                      std::to_string(n));
  }
  return model;
}

/// Entrywise-max merge of per-draw verdicts; growing dominates, then
/// inconclusive, and the bound estimate is the worst case over draws.
void merge_verdicts(MembershipVerdict& agg, const MembershipVerdict& v,
                    bool first) {
  if (first) {
    agg = v;
    return;
  }
  for (std::size_t i = 0; i < agg.norms_by_dim.size(); ++i) {
    agg.norms_by_dim[i].second =
        std::max(agg.norms_by_dim[i].second, v.norms_by_dim[i].second);
  }
  if (v.verdict == Verdict::growing || agg.verdict == Verdict::growing) {
    agg.verdict = Verdict::growing;
  } else if (v.verdict == Verdict::inconclusive ||
             agg.verdict == Verdict::inconclusive) {
    agg.verdict = Verdict::inconclusive;
  }
  if (agg.verdict == Verdict::bounded && agg.bound_estimate &&
      v.bound_estimate) {
    agg.bound_estimate = std::max(*agg.bound_estimate, *v.bound_estimate);
  } else if (agg.verdict != Verdict::bounded) {
    agg.bound_estimate.reset();
  }
}

}  // namespace

std::function<std::vector<double>(std::size_t)> anchor_dual_family(
    const ModelFamily& family, std::vector<double> mu_full) {
  return [family, mu = std::move(mu_full)](std::size_t n) {
    if (n > mu.size())
      throw DimensionError("covector draw shorter than requested dimension");
    const AlgebroidModel model = instantiate_checked(family, n);
    const std::vector<double> m(n, 0.0);
    return anchor_transpose_apply_g<double>(model.anchor, m,
                                            truncate(mu, n));
  };
}

std::function<std::vector<double>(std::size_t)> ad_star_family(
    const ModelFamily& family, std::vector<double> x_full,
    std::vector<double> phi_full) {
  return [family, x = std::move(x_full),
          phi = std::move(phi_full)](std::size_t n) {
    if (n > x.size() || n > phi.size())
      throw DimensionError("section draw shorter than requested dimension");
    const AlgebroidModel model = instantiate_checked(family, n);
    const std::vector<double> m(n, 0.0);
    return ad_star(model, m, truncate(x, n), truncate(phi, n));
  };
}

ConditionReport predual_condition_diagnostic(const ModelFamily& family,
                                             const std::vector<std::size_t>& dims,
                                             Rng& rng, std::size_t draws,
                                             const MembershipRule& rule) {
  if (dims.size() < 3)
    throw PreconditionError("condition diagnostic needs at least three dims");
  if (draws == 0) throw PreconditionError("condition diagnostic needs draws");
  const std::size_t top = dims.back();
  const AlgebroidModel top_model = instantiate_checked(family, top);
  const NormTag mu_tag =
      family.mu_profile.value_or(dual_norm_tag(top_model.base.norm_tag));
  const NormTag target = top_model.predual.norm_tag;
  ConditionReport report;
  for (std::size_t d = 0; d < draws; ++d) {
    std::vector<double> mu = sample_profile(mu_tag, top, rng);
    std::vector<double> x = sample_profile(top_model.fiber.norm_tag, top, rng);
    std::vector<double> phi =
        sample_profile(top_model.predual.norm_tag, top, rng);
    const MembershipVerdict va = membership_diagnostic(
        anchor_dual_family(family, std::move(mu)), target, dims, rule);
    const MembershipVerdict vb = membership_diagnostic(
        ad_star_family(family, std::move(x), std::move(phi)), target, dims,
        rule);
    merge_verdicts(report.anchor_dual_verdict, va, d == 0);
    merge_verdicts(report.ad_star_verdict, vb, d == 0);
  }
  report.is_poisson_manifold =
      report.anchor_dual_verdict.verdict == Verdict::bounded &&
      report.ad_star_verdict.verdict == Verdict::bounded;
  return report;
}

namespace {

void check_square_point(const BundlePoint& pt) {
  if (pt.m.coords.size() != pt.phi.coords.size()) {
    throw DimensionError(
        "weak symplectic operations need base dim == fiber dim");
  }
}

void check_atom_at(const BundlePoint& pt, const std::vector<double>& a_m,
                   const std::vector<double>& a_phi) {
  if (a_m != pt.m.coords || a_phi != pt.phi.coords)
    throw PreconditionError("atoms must sit at the same bundle point");
}

}  // namespace

double omega_eval(const BundlePoint& pt, const TangentAtom& t1,
                  const TangentAtom& t2) {
  check_square_point(pt);
  check_atom_at(pt, t1.base_pt.m.coords, t1.base_pt.phi.coords);
  check_atom_at(pt, t2.base_pt.m.coords, t2.base_pt.phi.coords);
  const std::size_t n = pt.m.coords.size();
  if (t1.v.coords.size() != n || t1.psi.coords.size() != n ||
      t2.v.coords.size() != n || t2.psi.coords.size() != n) {
    throw DimensionError("tangent atoms do not match the point dimension");
  }
  return pair_raw(t1.psi.coords, t2.v.coords) -
         pair_raw(t2.psi.coords, t1.v.coords);
}

CotangentAtom omega_flat(const BundlePoint& pt, const TangentAtom& t) {
  check_square_point(pt);
  check_atom_at(pt, t.base_pt.m.coords, t.base_pt.phi.coords);
  const std::size_t n = pt.m.coords.size();
  if (t.v.coords.size() != n || t.psi.coords.size() != n)
    throw DimensionError("tangent atom does not match the point dimension");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -t.v.coords[i];
  const SpaceModel mu_space{n, dual_norm_tag(pt.m.space.norm_tag),
                            RoleTag::base};
  const SpaceModel x_space{n, dual_norm_tag(pt.phi.space.norm_tag),
                           RoleTag::fiber};
  return CotangentAtom{pt, make_vec(t.psi.coords, mu_space),
                       make_vec(std::move(x), x_space)};
}

TangentAtom omega_sharp(const BundlePoint& pt, const CotangentAtom& c) {
  check_square_point(pt);
  check_atom_at(pt, c.base_pt.m.coords, c.base_pt.phi.coords);
  const std::size_t n = pt.m.coords.size();
  if (c.mu.coords.size() != n || c.x.coords.size() != n)
    throw DimensionError("cotangent atom does not match the point dimension");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = -c.x.coords[i];
  const SpaceModel psi_space{n, pt.phi.space.norm_tag, RoleTag::dual_fiber};
  return TangentAtom{pt, make_vec(std::move(v), pt.m.space),
                     make_vec(c.mu.coords, psi_space)};
}

double omega_bracket(const SmoothFn& f, const SmoothFn& g,
                     const BundlePoint& pt) {
  check_square_point(pt);
  if (f.base_dim != pt.m.coords.size() || f.fiber_dim != pt.phi.coords.size() ||
      g.base_dim != f.base_dim || g.fiber_dim != f.fiber_dim) {
    throw DimensionError("functions do not match the point dimensions");
  }
  const JetG<double> jf = jet_generic<double>(f, pt.m.coords, pt.phi.coords);
  const JetG<double> jg = jet_generic<double>(g, pt.m.coords, pt.phi.coords);
  return -pair_raw(jf.d_m, jg.d_phi) + pair_raw(jg.d_m, jf.d_phi);
}

MembershipVerdict flat_membership(const SmoothFn& f, const BundlePoint& pt,
                                  const std::vector<std::size_t>& dims,
                                  const MembershipRule& rule) {
  if (f.base_dim != pt.m.coords.size() || f.fiber_dim != pt.phi.coords.size())
    throw DimensionError("function does not match the point dimensions");
  if (!dims.empty() && dims.back() > f.base_dim) {
    throw PreconditionError(
        "membership schedule exceeds the function base dimension");
  }
  // The covector df/dm is computed once at pt; the schedule then measures
  // its truncations, a nested family by construction.
  const JetG<double> j = jet_generic<double>(f, pt.m.coords, pt.phi.coords);
  const auto family = [grad = j.d_m](std::size_t n) {
    return truncate(grad, n);
  };
  return membership_diagnostic(family, dual_norm_tag(pt.m.space.norm_tag),
                               dims, rule);
}

OmegaBracketChecked omega_bracket_checked(const SmoothFn& f, const SmoothFn& g,
                                          const BundlePoint& pt,
                                          const std::vector<std::size_t>& dims,
                                          const MembershipRule& rule) {
  OmegaBracketChecked out;
  out.value = omega_bracket(f, g, pt);
  out.f_verdict = flat_membership(f, pt, dims, rule).verdict;
  out.g_verdict = flat_membership(g, pt, dims, rule).verdict;
  out.warning =
      out.f_verdict != Verdict::bounded || out.g_verdict != Verdict::bounded;
  return out;
}

double coincidence_check(const AlgebroidModel& model, const SmoothFn& f,
                         const SmoothFn& g, const BundlePoint& pt) {
  return std::abs(omega_bracket(f, g, pt) - poisson_bracket(model, f, g, pt));
}

}  // namespace predual
