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

#include "predual/reconstruct.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "predual/errors.hpp"
#include "predual/sampling.hpp"

namespace predual {

namespace {

constexpr double kLinearityTol = 1e-8;
constexpr double kOracleTol = 1e-10;

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

Vec recover_bracket(const BracketOracle& bracket, const SectionFn& X,
                    const SectionFn& Y, const Vec& m,
                    const SpaceModel& predual_space) {
  const std::size_t nf = predual_space.dim;
  if (X.components.size() != nf || Y.components.size() != nf)
    throw DimensionError("sections do not match the predual dimension");
  if (X.base_dim != m.coords.size() || Y.base_dim != m.coords.size())
    throw DimensionError("sections do not match the base point");
  const SmoothFn lx = lambda_of_section(X);
  const SmoothFn ly = lambda_of_section(Y);
  const auto h = [&](const std::vector<double>& phi) {
    return bracket(lx, ly, make_point(m, Vec{phi, predual_space}));
  };

  const auto basis = [&](std::size_t j) {
    std::vector<double> e(nf, 0.0);
    e[j] = 1.0;
    return e;
  };
  std::vector<double> ones(nf, 1.0);
  std::vector<double> alt(nf);
  for (std::size_t j = 0; j < nf; ++j) alt[j] = (j % 2 == 0) ? 1.0 : -1.0;

  const auto probe = [&](const std::vector<double>& phi,
                         const std::vector<double>& psi, double a, double b) {
    std::vector<double> combo(nf);
    for (std::size_t j = 0; j < nf; ++j) combo[j] = a * phi[j] + b * psi[j];
    const double hp = h(phi);
    const double hq = h(psi);
    const double defect = std::abs(h(combo) - (a * hp + b * hq));
    const double scale =
        std::max(1.0, std::max(std::abs(hp), std::abs(hq)));
    if (defect > kLinearityTol * scale) {
      throw NotLinearError(
          "bracket of fiber-linear observables is not fiber-wise linear");
    }
  };
  if (std::abs(h(std::vector<double>(nf, 0.0))) > kLinearityTol)
    throw NotLinearError("bracket does not vanish at the zero covector");
  probe(ones, alt, 0.75, -1.25);
  if (nf >= 2) probe(basis(0), basis(1), 2.0, 0.5);

  std::vector<double> w(nf);
  for (std::size_t j = 0; j < nf; ++j) w[j] = h(basis(j));
  const SpaceModel fiber_space{nf, dual_norm_tag(predual_space.norm_tag),
                               RoleTag::fiber};
  return make_vec(std::move(w), fiber_space);
}

Vec recover_anchor(const SharpOracle& sharp_oracle, const SectionFn& X,
                   const Vec& m, const SpaceModel& predual_space, Rng& rng) {
  if (X.base_dim != m.coords.size())
    throw DimensionError("section does not match the base point");
  const SmoothFn lx = lambda_of_section(X);
  if (lx.fiber_dim != predual_space.dim)
    throw DimensionError("section does not match the predual dimension");
  std::vector<double> first;
  for (std::size_t draw = 0; draw < 8; ++draw) {
    const std::vector<double> phi =
        sample_box(predual_space.dim, -1.0, 1.0, rng);
    const BundlePoint pt = make_point(m, Vec{phi, predual_space});
    const Jet1 j = jet(lx, pt);
    const TangentAtom t = sharp_oracle(cotangent_of_jet(pt, j));
    std::vector<double> rec(t.v.coords.size());
    for (std::size_t i = 0; i < rec.size(); ++i) rec[i] = -t.v.coords[i];
    if (draw == 0) {
      first = std::move(rec);
    } else if (max_abs_diff(first, rec) > kOracleTol) {
      throw OracleInconsistencyError(
          "recovered anchor value depends on the fiber point");
    }
  }
  return make_vec(std::move(first), m.space);
}

RoundtripReport roundtrip_check(const AlgebroidModel& model, Rng& rng,
                                std::size_t draws) {
  if (draws == 0) throw PreconditionError("roundtrip_check needs draws >= 1");
  const std::size_t nb = model.base.dim;
  const std::size_t nf = model.fiber.dim;
  const BracketOracle bracket = [&model](const SmoothFn& f, const SmoothFn& g,
                                         const BundlePoint& pt) {
    return poisson_bracket(model, f, g, pt);
  };
  const SharpOracle sharp_oracle = [&model](const CotangentAtom& atom) {
    return sharp(model, atom);
  };

  RoundtripReport report;

  // Anchor matrix recovery: columns are a(e_j)(m) for basis sections.
  {
    const std::vector<double> m = sample_box(nb, -1.0, 1.0, rng);
    const Vec mv{m, model.base};
    for (std::size_t j = 0; j < nf; ++j) {
      const SectionFn ej = section_basis(nb, nf, j);
      const Vec rec_col =
          recover_anchor(sharp_oracle, ej, mv, model.predual, rng);
      std::vector<double> x(nf, 0.0);
      x[j] = 1.0;
      const std::vector<double> want =
          anchor_apply_g<double>(model.anchor, m, x);
      report.anchor_residual = std::max(report.anchor_residual,
                                        max_abs_diff(rec_col.coords, want));
    }
  }

  for (std::size_t d = 0; d < draws; ++d) {
    const std::vector<double> m = sample_box(nb, -1.0, 1.0, rng);
    const Vec mv{m, model.base};
    const SectionFn X = random_polynomial_section(nb, nf, 2, rng);
    const SectionFn Y = random_polynomial_section(nb, nf, 2, rng);

    const Vec rec = recover_bracket(bracket, X, Y, mv, model.predual);
    const std::vector<double> direct =
        bracket_sections_g<double>(model, X, Y, m);
    report.bracket_residual = std::max(report.bracket_residual,
                                       max_abs_diff(rec.coords, direct));

    const Vec rec_a = recover_anchor(sharp_oracle, X, mv, model.predual, rng);
    const std::vector<double> direct_a = anchor_apply_g<double>(
        model.anchor, m, section_value<double>(X, m));
    report.anchor_residual = std::max(report.anchor_residual,
                                      max_abs_diff(rec_a.coords, direct_a));

    const SectionFn Xp = perturb_section_first_order(X, m, 0.5, rng);
    const Vec rec_ap =
        recover_anchor(sharp_oracle, Xp, mv, model.predual, rng);
    report.perturbation_shift = std::max(
        report.perturbation_shift, max_abs_diff(rec_ap.coords, rec_a.coords));

    // Constant basis sections read the structure field back entrywise; the
    // pair sweep runs on a few points since every draw repeats it.
    const std::size_t pair_probes = (d < 3) ? (nf <= 8 ? nf : 8) : 0;
    for (std::size_t a = 0; a + 1 < pair_probes; ++a) {
      for (std::size_t b = a + 1; b < pair_probes; ++b) {
        const SectionFn ea = section_basis(nb, nf, a);
        const SectionFn eb = section_basis(nb, nf, b);
        const Vec rec_c = recover_bracket(bracket, ea, eb, mv, model.predual);
        for (std::size_t i = 0; i < nf; ++i) {
          const double want = structure_entry(model.structure, m, i, a, b);
          report.structure_residual =
              std::max(report.structure_residual,
                       std::abs(rec_c.coords[i] - want));
        }
      }
    }

    // Leibniz law of the recovered bracket with the recovered anchor.
    const ExprPtr f_expr = random_base_expr(nb, 3, rng);
    const SmoothFn f_base = make_fn(f_expr, nb, 0);
    std::vector<ExprPtr> fy_comps;
    fy_comps.reserve(nf);
    for (const ExprPtr& comp : Y.components)
      fy_comps.push_back(expr_product({f_expr, comp}));
    const SectionFn fY = make_section(nb, std::move(fy_comps));
    const Vec rec_fy = recover_bracket(bracket, X, fY, mv, model.predual);
    const JetG<double> jf = jet_generic<double>(f_base, m, {});
    const double fm = jf.value;
    const double df_along = pair_raw(jf.d_m, rec_a.coords);
    const std::vector<double> ym = section_value<double>(Y, m);
    for (std::size_t i = 0; i < nf; ++i) {
      const double want = fm * rec.coords[i] + df_along * ym[i];
      report.leibniz_residual = std::max(
          report.leibniz_residual, std::abs(rec_fy.coords[i] - want));
    }
  }
  return report;
}

}  // namespace predual
