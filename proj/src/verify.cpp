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

#include "predual/verify.hpp"

#include <cmath>
#include <cstddef>

#include "predual/errors.hpp"
#include "predual/sampling.hpp"

namespace predual {

namespace {

constexpr double kTolAntisym = 1e-12;
constexpr double kTolSharp = 1e-12;
constexpr double kTolLeibnizFn = 1e-10;
constexpr double kTolRelations = 1e-9;
constexpr double kTolJacobiFn = 1e-7;
constexpr double kTolLinearity = 1e-10;
constexpr double kTolSectionLeibniz = 1e-9;
constexpr double kTolSectionJacobi = 1e-8;
constexpr double kTolAnchorMorphism = 1e-8;
constexpr double kTolFirstJet = 1e-10;
constexpr double kNegativeControlFloor = 1e-6;

/// A mixed draw: fiber-linear, pulled-back, or general smooth function.
SmoothFn mixed_fn(const AlgebroidModel& model, Rng& rng) {
  const std::size_t nb = model.base.dim;
  const std::size_t nf = model.fiber.dim;
  switch (rng.below(3)) {
    case 0:
      return lambda_of_section(random_polynomial_section(nb, nf, 2, rng));
    case 1:
      return pullback(make_fn(random_base_expr(nb, 3, rng), nb, nf));
    default:
      return random_fn(nb, nf, 4, rng);
  }
}

}  // namespace

std::vector<Check> identity_suite(const AlgebroidModel& model, Rng& rng,
                                  const VerifyOptions& opts) {
  const std::size_t nb = model.base.dim;
  const std::size_t nf = model.fiber.dim;
  std::vector<Check> checks;
  const auto add = [&](std::string name, double residual, double tol) {
    const auto it = opts.tol_overrides.find(name);
    if (it != opts.tol_overrides.end()) tol = it->second;
    checks.push_back(make_check(std::move(name), residual, tol));
  };

  double antisym = 0.0;
  double self = 0.0;
  double sharp_res = 0.0;
  for (std::size_t d = 0; d < opts.draws_exact; ++d) {
    const BundlePoint pt = sample_point(model, rng);
    const SmoothFn f = mixed_fn(model, rng);
    const SmoothFn g = mixed_fn(model, rng);
    const double fg = poisson_bracket(model, f, g, pt);
    const double gf = poisson_bracket(model, g, f, pt);
    antisym = std::max(antisym, std::abs(fg + gf));
    self = std::max(self, std::abs(poisson_bracket(model, f, f, pt)));
    const CotangentAtom af = cotangent_of_jet(pt, jet(f, pt));
    const CotangentAtom ag = cotangent_of_jet(pt, jet(g, pt));
    sharp_res = std::max(
        sharp_res, std::abs(fg - pair_atoms(af, sharp(model, ag))));
  }
  add("bracket-antisymmetry", antisym, kTolAntisym);
  add("bracket-self-annihilation", self, kTolAntisym);
  add("sharp-consistency", sharp_res, kTolSharp);

  double leibniz_fn = 0.0;
  RelationResiduals rel;
  double linearity = 0.0;
  double section_leibniz = 0.0;
  double section_jacobi = 0.0;
  double morphism = 0.0;
  double first_jet = 0.0;
  double negative_max = 0.0;
  const bool anchored = model.anchor.kind != AnchorField::Kind::zero;
  for (std::size_t d = 0; d < opts.draws_props; ++d) {
    const BundlePoint pt = sample_point(model, rng);
    const std::vector<double>& m = pt.m.coords;

    const SmoothFn f = mixed_fn(model, rng);
    const SmoothFn g = mixed_fn(model, rng);
    const SmoothFn h = mixed_fn(model, rng);
    const double prod = poisson_bracket(model, f, g * h, pt);
    const double want = poisson_bracket(model, f, g, pt) * eval(h, pt) +
                        eval(g, pt) * poisson_bracket(model, f, h, pt);
    leibniz_fn = std::max(leibniz_fn, std::abs(prod - want));

    const SectionFn X = random_polynomial_section(nb, nf, 2, rng);
    const SectionFn Y = random_polynomial_section(nb, nf, 2, rng);
    const SectionFn Z = random_polynomial_section(nb, nf, 2, rng);
    const SmoothFn fb = make_fn(random_base_expr(nb, 3, rng), nb, nf);
    const SmoothFn gb = make_fn(random_base_expr(nb, 3, rng), nb, nf);
    const RelationResiduals r =
        structural_relations_check(model, X, Y, fb, gb, pt);
    rel.pull_pull = std::max(rel.pull_pull, r.pull_pull);
    rel.lambda_pull = std::max(rel.lambda_pull, r.lambda_pull);
    rel.lambda_lambda = std::max(rel.lambda_lambda, r.lambda_lambda);

    if (d < opts.draws_props / 10 + 1)
      linearity = std::max(linearity, linearity_check(model, X, Y, m, rng));

    const SmoothFn fb0 = make_fn(random_base_expr(nb, 3, rng), nb, 0);
    section_leibniz =
        std::max(section_leibniz, leibniz_check(model, X, Y, fb0, m));
    section_jacobi =
        std::max(section_jacobi, jacobi_check_sections(model, X, Y, Z, m));
    morphism = std::max(morphism, anchor_morphism_residual(model, X, Y, m));

    const SectionFn X2 = perturb_section_second_order(X, m, 0.7, rng);
    first_jet =
        std::max(first_jet, first_jet_dependence_check(model, X, X2, Y, m));
    if (anchored) {
      const SectionFn X1 = perturb_section_first_order(X, m, 0.7, rng);
      const std::vector<double> b1 = bracket_sections_g<double>(model, X, Y, m);
      const std::vector<double> b2 =
          bracket_sections_g<double>(model, X1, Y, m);
      double shift = 0.0;
      for (std::size_t i = 0; i < b1.size(); ++i)
        shift = std::max(shift, std::abs(b1[i] - b2[i]));
      negative_max = std::max(negative_max, shift);
    }
  }
  add("leibniz-product", leibniz_fn, kTolLeibnizFn);
  add("relation-pullback-pullback", rel.pull_pull, kTolRelations);
  add("relation-lambda-pullback", rel.lambda_pull, kTolRelations);
  add("relation-lambda-lambda", rel.lambda_lambda, kTolRelations);
  add("fiber-linearity", linearity, kTolLinearity);
  add("section-leibniz", section_leibniz, kTolSectionLeibniz);
  add("section-jacobi", section_jacobi, kTolSectionJacobi);
  add("anchor-morphism", morphism, kTolAnchorMorphism);
  add("first-jet-dependence", first_jet, kTolFirstJet);
  if (anchored) {
    // Power check: derivative perturbations must move the bracket.
    add("linear-response-control",
        negative_max > kNegativeControlFloor ? 0.0 : 1.0, 0.5);
  }

  double jacobi = 0.0;
  for (std::size_t d = 0; d < opts.draws_jacobi; ++d) {
    const BundlePoint pt = sample_point(model, rng);
    const SmoothFn f = mixed_fn(model, rng);
    const SmoothFn g = mixed_fn(model, rng);
    const SmoothFn h = mixed_fn(model, rng);
    jacobi = std::max(jacobi, jacobi_check_functions(model, f, g, h, pt));
  }
  add("jacobi-functions", jacobi, kTolJacobiFn);

  // Nonlinearity must be detectable: a product of fiber-linear observables
  // has to fail the linearity probe.
  {
    const BundlePoint pt = sample_point(model, rng);
    const SmoothFn lx =
        lambda_of_section(random_polynomial_section(nb, nf, 1, rng));
    const SmoothFn ly =
        lambda_of_section(random_polynomial_section(nb, nf, 1, rng));
    const SmoothFn prod = lx * ly;
    const auto fn = [&](const std::vector<double>& mv,
                        const std::vector<double>& phiv) {
      return eval_generic<double>(prod, mv, phiv);
    };
    const double defect =
        fiber_linearity_probe(fn, pt.m.coords, nf, 20, rng);
    add("nonlinearity-detector", defect > kNegativeControlFloor ? 0.0 : 1.0,
        0.5);
  }

  return checks;
}

}  // namespace predual
