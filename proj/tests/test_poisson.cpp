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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "predual/errors.hpp"
#include "predual/models.hpp"
#include "predual/poisson.hpp"
#include "predual/rng.hpp"
#include "predual/sampling.hpp"

using namespace predual;

namespace {

SmoothFn phi_coord(const AlgebroidModel& model, std::size_t k) {
  return fn_fiber_coord(k, model.base.dim, model.fiber.dim);
}

SmoothFn base_only_fn(const AlgebroidModel& model, Rng& rng) {
  return make_fn(random_base_expr(model.base.dim, 2, rng), model.base.dim,
                 model.fiber.dim);
}

}  // namespace

TEST_CASE("linear coordinates reproduce the structure constants") {
  // On a Lie-Poisson model {phi_j, phi_k}(phi) = <[e_j, e_k], phi>.
  const AlgebroidModel so3 = make_so3();
  Rng rng(3);
  const BundlePoint pt = sample_point(so3, rng);
  const double p0 = pt.phi.coords[0];
  const double p1 = pt.phi.coords[1];
  const double p2 = pt.phi.coords[2];
  CHECK(poisson_bracket(so3, phi_coord(so3, 0), phi_coord(so3, 1), pt) ==
        doctest::Approx(p2).epsilon(1e-15));
  CHECK(poisson_bracket(so3, phi_coord(so3, 1), phi_coord(so3, 2), pt) ==
        doctest::Approx(p0).epsilon(1e-15));
  CHECK(poisson_bracket(so3, phi_coord(so3, 2), phi_coord(so3, 0), pt) ==
        doctest::Approx(p1).epsilon(1e-15));

  const AlgebroidModel sl2 = make_sl2();
  const BundlePoint qt = sample_point(sl2, rng);
  // [h, e] = 2e, [h, f] = -2f, [e, f] = h in the (h, e, f) ordering.
  CHECK(poisson_bracket(sl2, phi_coord(sl2, 0), phi_coord(sl2, 1), qt) ==
        doctest::Approx(2.0 * qt.phi.coords[1]).epsilon(1e-15));
  CHECK(poisson_bracket(sl2, phi_coord(sl2, 0), phi_coord(sl2, 2), qt) ==
        doctest::Approx(-2.0 * qt.phi.coords[2]).epsilon(1e-15));
  CHECK(poisson_bracket(sl2, phi_coord(sl2, 1), phi_coord(sl2, 2), qt) ==
        doctest::Approx(qt.phi.coords[0]).epsilon(1e-15));
}

TEST_CASE("bracket is antisymmetric bitwise and vanishes on the diagonal") {
  Rng rng(13);
  for (const char* name : {"so3-action", "seqtriple:8", "precotangent:8"}) {
    const AlgebroidModel model = parse_preset(name).model;
    for (int t = 0; t < 40; ++t) {
      const SmoothFn f =
          random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const SmoothFn g =
          random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const BundlePoint pt = sample_point(model, rng);
      const double fg = poisson_bracket(model, f, g, pt);
      const double gf = poisson_bracket(model, g, f, pt);
      CHECK(fg == -gf);  // bitwise
      CHECK(poisson_bracket(model, f, f, pt) == 0.0);
    }
  }
}

TEST_CASE("sharp map has hand-checkable coordinates on the sequence triple") {
  const AlgebroidModel model = make_sequence_triple(4);
  Rng rng(19);
  const BundlePoint pt = sample_point(model, rng);
  const Vec mu = make_vec({1.0, -2.0, 0.5, 3.0},
                          SpaceModel{4, NormTag::p2, RoleTag::base});
  const Vec x = make_vec({2.0, 1.0, -1.0, 0.5},
                         SpaceModel{4, NormTag::pinf, RoleTag::fiber});
  const TangentAtom t = sharp(model, CotangentAtom{pt, mu, x});
  // v = -a(x) with a = diag(1, 1/2, 1/3, 1/4); psi = a*(mu), C = 0.
  CHECK(t.v.coords[0] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(t.v.coords[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(t.v.coords[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(t.v.coords[3] == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(t.psi.coords[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.psi.coords[1] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(t.psi.coords[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(t.psi.coords[3] == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("sharp map on a Lie-Poisson model is minus coadjoint action") {
  const AlgebroidModel so3 = make_so3();
  Rng rng(23);
  const BundlePoint pt = sample_point(so3, rng);
  const Vec mu = make_vec({0.7}, SpaceModel{1, NormTag::p2, RoleTag::base});
  const std::vector<double> xv = {1.0, -0.5, 2.0};
  const Vec x = make_vec(xv, SpaceModel{3, NormTag::p2, RoleTag::fiber});
  const TangentAtom t = sharp(so3, CotangentAtom{pt, mu, x});
  CHECK(t.v.coords[0] == 0.0);  // anchor is zero
  // ad*_x phi = phi x x for the cross-product bracket.
  const auto ref = oracle::cross3(
      {pt.phi.coords[0], pt.phi.coords[1], pt.phi.coords[2]},
      {xv[0], xv[1], xv[2]});
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(t.psi.coords[i] == doctest::Approx(-ref[i]).epsilon(1e-14));
}

TEST_CASE("bracket equals pairing with the sharp of the second argument") {
  Rng rng(29);
  for (const char* name :
       {"so3", "sl2", "precotangent:8", "seqtriple:8", "so3-action"}) {
    const AlgebroidModel model = parse_preset(name).model;
    double worst = 0.0;
    for (int t = 0; t < 60; ++t) {
      const SmoothFn f = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const SmoothFn g = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const BundlePoint pt = sample_point(model, rng);
      const double direct = poisson_bracket(model, f, g, pt);
      const CotangentAtom df = cotangent_of_jet(pt, jet(f, pt));
      const CotangentAtom dg = cotangent_of_jet(pt, jet(g, pt));
      const double via_sharp = pair_atoms(df, sharp(model, dg));
      worst = std::max(worst, std::abs(direct - via_sharp));
    }
    CHECK_MESSAGE(worst <= 1e-12, name);
  }
}

TEST_CASE("structural relations of the linear bracket") {
  Rng rng(31);
  for (const char* name : {"so3-action", "seqtriple:8", "precotangent:8"}) {
    const AlgebroidModel model = parse_preset(name).model;
    const std::size_t nb = model.base.dim;
    const std::size_t nf = model.fiber.dim;
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
      const SectionFn X = random_polynomial_section(nb, nf, 2, rng);
      const SectionFn Y = random_polynomial_section(nb, nf, 2, rng);
      const SmoothFn f = base_only_fn(model, rng);
      const SmoothFn g = base_only_fn(model, rng);
      const BundlePoint pt = sample_point(model, rng);
      const RelationResiduals r =
          structural_relations_check(model, X, Y, f, g, pt);
      worst = std::max({worst, r.pull_pull, r.lambda_pull, r.lambda_lambda});
    }
    CHECK_MESSAGE(worst <= 1e-9, name);
  }
}

TEST_CASE("pullbacks commute: base functions Poisson-commute") {
  Rng rng(37);
  const AlgebroidModel model = make_so3_action();
  for (int t = 0; t < 30; ++t) {
    const SmoothFn f = pullback(base_only_fn(model, rng));
    const SmoothFn g = pullback(base_only_fn(model, rng));
    const BundlePoint pt = sample_point(model, rng);
    CHECK(poisson_bracket(model, f, g, pt) == 0.0);
  }
}

TEST_CASE("Jacobi identity for functions") {
  Rng rng(41);
  for (const char* name : {"so3", "sl2", "so3-action", "seqtriple:8"}) {
    const AlgebroidModel model = parse_preset(name).model;
    const std::size_t nb = model.base.dim;
    const std::size_t nf = model.fiber.dim;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const SmoothFn f = random_fn(nb, nf, 2, rng);
      const SmoothFn g = random_fn(nb, nf, 2, rng);
      const SmoothFn h = random_fn(nb, nf, 2, rng);
      const BundlePoint pt = sample_point(model, rng);
      worst = std::max(worst, jacobi_check_functions(model, f, g, h, pt));
    }
    CHECK_MESSAGE(worst <= 1e-7, name);
  }
}

TEST_CASE("Jacobi is near machine precision for linear triples") {
  Rng rng(43);
  const AlgebroidModel so3 = make_so3();
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const SmoothFn f = lambda_of_section(random_polynomial_section(1, 3, 0, rng));
    const SmoothFn g = lambda_of_section(random_polynomial_section(1, 3, 0, rng));
    const SmoothFn h = lambda_of_section(random_polynomial_section(1, 3, 0, rng));
    const BundlePoint pt = sample_point(so3, rng);
    worst = std::max(worst, jacobi_check_functions(so3, f, g, h, pt));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("the bracket of lambda functions is fiber-wise linear") {
  Rng rng(47);
  const AlgebroidModel model = make_so3_action();
  const SectionFn X = random_polynomial_section(3, 3, 2, rng);
  const SectionFn Y = random_polynomial_section(3, 3, 2, rng);
  const std::vector<double> m = sample_box(3, -1.0, 1.0, rng);
  CHECK(linearity_check(model, X, Y, m, rng) <= 1e-10);
}

TEST_CASE("a quadratic observable fails the linearity probe") {
  Rng rng(53);
  const AlgebroidModel model = make_so3_action();
  const std::vector<double> m = {0.3, -0.2, 0.5};
  auto quadratic = [](const std::vector<double>&,
                      const std::vector<double>& phi) {
    double s = 0.0;
    for (double p : phi) s += p;
    return s * s;
  };
  CHECK(fiber_linearity_probe(quadratic, m, 3, 20, rng) > 1e-6);
}

TEST_CASE("predual conditions: harmonic sequence triple is a Poisson manifold") {
  Rng rng(59);
  const ModelFamily fam = sequence_triple_family();
  const ConditionReport r =
      predual_condition_diagnostic(fam, doubling_dims(8, 1024), rng, 8);
  CHECK(r.anchor_dual_verdict.verdict == Verdict::bounded);
  CHECK(r.ad_star_verdict.verdict == Verdict::bounded);
  CHECK(r.is_poisson_manifold);
  REQUIRE(r.anchor_dual_verdict.bound_estimate.has_value());
  CHECK(*r.anchor_dual_verdict.bound_estimate > 0.0);
}

TEST_CASE("predual conditions: unit weights push covectors out of ell-1") {
  Rng rng(61);
  SequenceWeights w;
  w.kind = SequenceWeights::Kind::unit;
  const ConditionReport r = predual_condition_diagnostic(
      sequence_triple_family(w), doubling_dims(8, 1024), rng, 8);
  CHECK(r.anchor_dual_verdict.verdict == Verdict::growing);
  CHECK_FALSE(r.is_poisson_manifold);
}

TEST_CASE("predual conditions: the tangent-type family fails") {
  Rng rng(67);
  const ConditionReport r = predual_condition_diagnostic(
      precotangent_family(), doubling_dims(8, 1024), rng, 8);
  CHECK(r.anchor_dual_verdict.verdict == Verdict::growing);
  CHECK_FALSE(r.is_poisson_manifold);
}

TEST_CASE("ad-star family of a zero structure field is identically zero") {
  Rng rng(71);
  const ModelFamily fam = sequence_triple_family();
  const std::vector<double> x = sample_box(64, -1.0, 1.0, rng);
  const std::vector<double> phi = sample_box(64, -1.0, 1.0, rng);
  const auto family = ad_star_family(fam, x, phi);
  for (std::size_t n : {8u, 16u, 32u}) {
    const std::vector<double> v = family(n);
    REQUIRE(v.size() == n);
    for (double c : v) CHECK(c == 0.0);
  }
}

TEST_CASE("anchor-dual images satisfy the weighted Cauchy-Schwarz bound") {
  Rng rng(73);
  const ModelFamily fam = sequence_triple_family();
  const double bound_const = std::sqrt(oracle::zeta2());
  for (int t = 0; t < 20; ++t) {
    const std::vector<double> mu = sample_profile(NormTag::p2, 512, rng);
    const auto family = anchor_dual_family(fam, mu);
    const std::vector<double> image = family(512);
    const double lhs = norm(image, NormTag::p1);
    const double rhs =
        norm(truncate(mu, 512), NormTag::p2) * bound_const * (1.0 + 1e-6);
    CHECK(lhs <= rhs);
  }
}

TEST_CASE("omega evaluates, flattens and sharpens consistently") {
  const AlgebroidModel model = make_precotangent(4);
  Rng rng(79);
  const BundlePoint pt = sample_point(model, rng);
  const SpaceModel vspace{4, NormTag::p2, RoleTag::base};
  const SpaceModel pspace{4, NormTag::p2, RoleTag::dual_fiber};
  const TangentAtom t1{pt, make_vec({1.0, 0.0, 2.0, -1.0}, vspace),
                       make_vec({0.5, 1.0, 0.0, 3.0}, pspace)};
  const TangentAtom t2{pt, make_vec({0.0, 1.0, -1.0, 2.0}, vspace),
                       make_vec({2.0, -1.0, 1.0, 0.5}, pspace)};
  // omega = <psi1, v2> - <psi2, v1>.
  const double expected = (0.5 * 0.0 + 1.0 * 1.0 + 0.0 * -1.0 + 3.0 * 2.0) -
                          (2.0 * 1.0 + -1.0 * 0.0 + 1.0 * 2.0 + 0.5 * -1.0);
  CHECK(omega_eval(pt, t1, t2) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(omega_eval(pt, t1, t2) == -omega_eval(pt, t2, t1));
  CHECK(omega_eval(pt, t1, t1) == 0.0);

  // flat then sharp is the exact identity.
  for (int t = 0; t < 50; ++t) {
    const TangentAtom a{pt,
                        make_vec(sample_box(4, -2.0, 2.0, rng), vspace),
                        make_vec(sample_box(4, -2.0, 2.0, rng), pspace)};
    const TangentAtom back = omega_sharp(pt, omega_flat(pt, a));
    CHECK(back.v.coords == a.v.coords);
    CHECK(back.psi.coords == a.psi.coords);
    // And the pairing identity omega(flat(a)^sharp, b) = omega(a, b).
    const CotangentAtom c = omega_flat(pt, a);
    CHECK(pair_atoms(c, t1) == doctest::Approx(omega_eval(pt, a, t1)));
  }
}

TEST_CASE("omega atoms must sit at the evaluation point") {
  const AlgebroidModel model = make_precotangent(3);
  Rng rng(83);
  const BundlePoint pt = sample_point(model, rng);
  const BundlePoint other = sample_point(model, rng);
  const SpaceModel vspace{3, NormTag::p2, RoleTag::base};
  const SpaceModel pspace{3, NormTag::p2, RoleTag::dual_fiber};
  const TangentAtom stray{other, make_vec({1.0, 0.0, 0.0}, vspace),
                          make_vec({0.0, 0.0, 0.0}, pspace)};
  const TangentAtom here{pt, make_vec({1.0, 0.0, 0.0}, vspace),
                         make_vec({0.0, 0.0, 0.0}, pspace)};
  CHECK_THROWS_AS((void)omega_eval(pt, stray, here), PreconditionError);
}

TEST_CASE("omega bracket coincides bitwise with the canonical bracket") {
  const AlgebroidModel model = make_precotangent(8);
  Rng rng(89);
  for (int t = 0; t < 60; ++t) {
    const SmoothFn f = random_fn(8, 8, 3, rng);
    const SmoothFn g = random_fn(8, 8, 3, rng);
    const BundlePoint pt = sample_point(model, rng);
    CHECK(coincidence_check(model, f, g, pt) == 0.0);
  }
}

TEST_CASE("flat membership separates decaying from flat gradients") {
  Rng rng(97);
  const AlgebroidModel model = make_precotangent(256);
  const BundlePoint pt = sample_point(model, rng);
  const auto dims = doubling_dims(8, 256);

  const SmoothFn good = random_flat_fn(256, 256, rng);
  CHECK(flat_membership(good, pt, dims).verdict == Verdict::bounded);

  std::vector<ExprPtr> terms;
  for (std::size_t k = 0; k < 256; ++k) terms.push_back(expr_base_coord(k));
  const SmoothFn bad = make_fn(expr_sum(std::move(terms)), 256, 256);
  CHECK(flat_membership(bad, pt, dims).verdict == Verdict::growing);
}

TEST_CASE("checked omega bracket flags non-flat arguments") {
  Rng rng(101);
  const AlgebroidModel model = make_precotangent(64);
  const BundlePoint pt = sample_point(model, rng);
  const auto dims = doubling_dims(8, 64);
  const SmoothFn good_f = random_flat_fn(64, 64, rng);
  const SmoothFn good_g = random_flat_fn(64, 64, rng);
  const OmegaBracketChecked ok =
      omega_bracket_checked(good_f, good_g, pt, dims);
  CHECK_FALSE(ok.warning);
  CHECK(ok.value ==
        doctest::Approx(omega_bracket(good_f, good_g, pt)).epsilon(1e-15));

  std::vector<ExprPtr> terms;
  for (std::size_t k = 0; k < 64; ++k) terms.push_back(expr_base_coord(k));
  const SmoothFn bad = make_fn(expr_sum(std::move(terms)), 64, 64);
  const OmegaBracketChecked flagged =
      omega_bracket_checked(bad, good_g, pt, dims);
  CHECK(flagged.warning);
  CHECK(flagged.f_verdict == Verdict::growing);
}

TEST_CASE("poisson_bracket_jet differentiates the bracket itself") {
  Rng rng(103);
  const AlgebroidModel model = make_so3_action();
  const SmoothFn f = random_fn(3, 3, 2, rng);
  const SmoothFn g = random_fn(3, 3, 2, rng);
  const BundlePoint pt = sample_point(model, rng);
  const Jet1 jb = poisson_bracket_jet(model, f, g, pt);
  CHECK(jb.value ==
        doctest::Approx(poisson_bracket(model, f, g, pt)).epsilon(1e-14));
  // Finite-difference the bracket in one base direction as a cross-check.
  const double h = 1e-5;
  BundlePoint up = pt;
  up.m.coords[1] += h;
  BundlePoint dn = pt;
  dn.m.coords[1] -= h;
  const double fd = (poisson_bracket(model, f, g, up) -
                     poisson_bracket(model, f, g, dn)) /
                    (2.0 * h);
  CHECK(jb.d_m.coords[1] == doctest::Approx(fd).epsilon(1e-5));
}
