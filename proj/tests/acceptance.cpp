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

// Acceptance gate: one pass/fail line per criterion, exit 0 only when every
// criterion holds. All tolerances are pinned here, next to the sweep they
// govern.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "predual/algebroid.hpp"
#include "predual/dynamics.hpp"
#include "predual/errors.hpp"
#include "predual/funcalg.hpp"
#include "predual/models.hpp"
#include "predual/poisson.hpp"
#include "predual/reconstruct.hpp"
#include "predual/rng.hpp"
#include "predual/sampling.hpp"
#include "predual/spaces.hpp"

using namespace predual;

namespace {

namespace fs = std::filesystem;

std::vector<AlgebroidModel> builtins() {
  return {make_so3(), make_sl2(), make_so3_action(), make_precotangent(16),
          make_sequence_triple(32)};
}

SmoothFn random_base_fn(std::size_t base_dim, std::size_t fiber_dim,
                        Rng& rng) {
  return make_fn(random_base_expr(base_dim, 3, rng), base_dim, fiber_dim);
}

// 1. All three structural bracket relations, 200 draws per model, 1e-9.
bool structural_relations() {
  const double tol = 1e-9;
  double worst = 0.0;
  for (const AlgebroidModel& model :
       {make_so3(), make_sl2(), make_precotangent(16),
        make_sequence_triple(32)}) {
    Rng rng(1001);
    for (int draw = 0; draw < 200; ++draw) {
      const SectionFn X =
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng);
      const SectionFn Y =
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng);
      const SmoothFn f = random_base_fn(model.base.dim, model.fiber.dim, rng);
      const SmoothFn g = random_base_fn(model.base.dim, model.fiber.dim, rng);
      const BundlePoint pt = sample_point(model, rng);
      const RelationResiduals r =
          structural_relations_check(model, X, Y, f, g, pt);
      worst = std::max({worst, r.pull_pull, r.lambda_pull, r.lambda_lambda});
    }
  }
  return worst <= tol;
}

// 2. Jacobi: 1e-7 over 100 mixed triples per built-in; 1e-12 when all three
// functions are lambdas on a point-base model.
bool jacobi_identity() {
  const double tol_mixed = 1e-7;
  const double tol_lambda = 1e-12;
  for (const AlgebroidModel& model : builtins()) {
    Rng rng(1002);
    for (int draw = 0; draw < 100; ++draw) {
      const SmoothFn f = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const SmoothFn g = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const SmoothFn h = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const BundlePoint pt = sample_point(model, rng);
      if (jacobi_check_functions(model, f, g, h, pt) > tol_mixed) return false;
    }
  }
  for (const AlgebroidModel& model : {make_so3(), make_sl2()}) {
    Rng rng(1003);
    for (int draw = 0; draw < 100; ++draw) {
      const SmoothFn f = lambda_of_section(
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng));
      const SmoothFn g = lambda_of_section(
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng));
      const SmoothFn h = lambda_of_section(
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng));
      const BundlePoint pt = sample_point(model, rng);
      if (jacobi_check_functions(model, f, g, h, pt) > tol_lambda)
        return false;
    }
  }
  return true;
}

// 3. Bracket equals pairing with the sharp of the second differential,
// 500 draws per model, 1e-12.
bool sharp_consistency() {
  const double tol = 1e-12;
  for (const AlgebroidModel& model : builtins()) {
    Rng rng(1004);
    for (int draw = 0; draw < 500; ++draw) {
      const SmoothFn f = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const SmoothFn g = random_fn(model.base.dim, model.fiber.dim, 3, rng);
      const BundlePoint pt = sample_point(model, rng);
      const CotangentAtom cf = cotangent_of_jet(pt, jet(f, pt));
      const CotangentAtom cg = cotangent_of_jet(pt, jet(g, pt));
      const double direct = poisson_bracket(model, f, g, pt);
      const double via_sharp = pair_atoms(cf, sharp(model, cg));
      if (std::abs(direct - via_sharp) > tol) return false;
    }
  }
  return true;
}

// 4. Predual conditions at dims 8..4096: harmonic seqtriple is a Poisson
// manifold, the unit-weight variant and the precotangent family are not, and
// the harmonic l1 norms obey the Cauchy-Schwarz bound.
bool predual_conditions() {
  const std::vector<std::size_t> dims = doubling_dims(8, 4096);

  Rng rng_a(1005);
  const ConditionReport harmonic =
      predual_condition_diagnostic(sequence_triple_family(), dims, rng_a);
  if (!harmonic.is_poisson_manifold) return false;
  if (harmonic.anchor_dual_verdict.verdict != Verdict::bounded) return false;
  if (harmonic.ad_star_verdict.verdict != Verdict::bounded) return false;

  SequenceWeights unit;
  unit.kind = SequenceWeights::Kind::unit;
  Rng rng_b(1006);
  const ConditionReport flat =
      predual_condition_diagnostic(sequence_triple_family(unit), dims, rng_b);
  if (flat.is_poisson_manifold) return false;
  if (flat.anchor_dual_verdict.verdict != Verdict::growing) return false;

  Rng rng_c(1007);
  const ConditionReport tangent =
      predual_condition_diagnostic(precotangent_family(), dims, rng_c);
  if (tangent.is_poisson_manifold) return false;
  if (tangent.anchor_dual_verdict.verdict != Verdict::growing) return false;

  // ||a*(mu)||_1 <= ||mu||_2 * sqrt(pi^2/6) for the harmonic diagonal.
  const double zeta2 = std::acos(-1.0) * std::acos(-1.0) / 6.0;
  const double slack = 1.0 + 1e-6;
  const ModelFamily fam = sequence_triple_family();
  const std::size_t n = 4096;
  Rng rng_d(1008);
  for (int draw = 0; draw < 200; ++draw) {
    const std::vector<double> mu = sample_profile(NormTag::p2, n, rng_d);
    const std::vector<double> image = anchor_dual_family(fam, mu)(n);
    const double lhs = norm(image, NormTag::p1);
    const double rhs = norm(mu, NormTag::p2) * std::sqrt(zeta2) * slack;
    if (lhs > rhs) return false;
  }
  return true;
}

// 5. The weak-symplectic bracket coincides with the algebroid bracket on
// flat-differential functions of the tangent-type model, and flat followed by
// sharp is the exact identity on tangent atoms.
bool omega_coincidence() {
  const double tol = 1e-10;
  const AlgebroidModel model = make_precotangent(16);
  Rng rng(1009);
  for (int draw = 0; draw < 200; ++draw) {
    const SmoothFn f = random_flat_fn(16, 16, rng);
    const SmoothFn g = random_flat_fn(16, 16, rng);
    const BundlePoint pt = sample_point(model, rng);
    if (coincidence_check(model, f, g, pt) > tol) return false;
  }
  SpaceModel psi_space = model.fiber;
  psi_space.role_tag = RoleTag::dual_fiber;
  psi_space.norm_tag = dual_norm_tag(model.fiber.norm_tag);
  for (int draw = 0; draw < 1000; ++draw) {
    const BundlePoint pt = sample_point(model, rng);
    const TangentAtom t{pt, sample_vec(model.base, rng),
                        make_vec(sample_box(16, -2.0, 2.0, rng), psi_space)};
    const TangentAtom back = omega_sharp(pt, omega_flat(pt, t));
    if (back.v.coords != t.v.coords) return false;
    if (back.psi.coords != t.psi.coords) return false;
  }
  return true;
}

// 6. Anchor values, structure entries, and section brackets recovered from
// the bracket alone match the originals; the recovered anchor ignores
// first-derivative perturbations of the section.
bool reconstruction_roundtrip() {
  for (const AlgebroidModel& model : builtins()) {
    Rng rng(1010);
    const RoundtripReport r = roundtrip_check(model, rng, 12);
    if (r.bracket_residual > 1e-9) return false;
    if (r.anchor_residual > 1e-9) return false;
    if (r.structure_residual > 1e-9) return false;
    if (r.leibniz_residual > 1e-9) return false;
    if (r.perturbation_shift > 1e-10) return false;
  }
  return true;
}

// 7. The section bracket at m only sees first jets: second-order
// perturbations leave it in place, and the first-order negative control
// moves it.
bool second_order_invariance() {
  const double tol = 1e-10;
  double control_shift = 0.0;
  for (const AlgebroidModel& model : builtins()) {
    Rng rng(1011);
    for (int draw = 0; draw < 40; ++draw) {
      const SectionFn X =
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng);
      const SectionFn Y =
          random_polynomial_section(model.base.dim, model.fiber.dim, 2, rng);
      const Vec m = sample_vec(model.base, rng);
      const Vec base_val = bracket_sections(model, X, Y, m);
      const SectionFn X2 =
          perturb_section_second_order(X, m.coords, 0.9, rng);
      const SectionFn Y2 =
          perturb_section_second_order(Y, m.coords, 0.7, rng);
      const Vec moved = bracket_sections(model, X2, Y2, m);
      for (std::size_t k = 0; k < model.fiber.dim; ++k)
        if (std::abs(moved.coords[k] - base_val.coords[k]) > tol)
          return false;
      if (model.name == "so3-action") {
        const SectionFn X1 =
            perturb_section_first_order(X, m.coords, 0.5, rng);
        const Vec shifted = bracket_sections(model, X1, Y, m);
        for (std::size_t k = 0; k < model.fiber.dim; ++k)
          control_shift = std::max(
              control_shift,
              std::abs(shifted.coords[k] - base_val.coords[k]));
      }
    }
  }
  // The negative control must register a visible change.
  return control_shift > 1e-6;
}

// 8. Rigid body: tiny energy and Casimir drift at step 1e-3 over horizon 10,
// fourth-order step-halving ratio at coarse steps, and the Casimir commutes
// with everything at the bracket level.
bool rigid_body_dynamics() {
  const AlgebroidModel so3 = make_so3();
  const std::vector<double> inertia = {1.0, 2.0, 3.0};
  std::vector<ExprPtr> h_terms;
  for (std::size_t k = 0; k < 3; ++k)
    h_terms.push_back(expr_product({expr_constant(0.5 / inertia[k]),
                                    expr_fiber_coord(k),
                                    expr_fiber_coord(k)}));
  const SmoothFn H = make_fn(expr_sum(std::move(h_terms)), 1, 3);
  std::vector<ExprPtr> c_terms;
  for (std::size_t k = 0; k < 3; ++k)
    c_terms.push_back(expr_product({expr_fiber_coord(k), expr_fiber_coord(k)}));
  const SmoothFn casimir = make_fn(expr_sum(std::move(c_terms)), 1, 3);

  const BundlePoint start = make_point(
      make_vec({0.0}, so3.base),
      make_vec({1.0, 0.5, 1.0 / 3.0}, so3.predual));
  const Trajectory traj = flow(so3, H, start, 1e-3, 10000);
  if (conserved_drift(traj, H) > 1e-8) return false;
  if (conserved_drift(traj, casimir) > 1e-8) return false;

  // Richardson triple at truncation-dominated steps; rk4 contracts ~16x.
  auto end_at = [&](double h, std::size_t n) {
    return flow(so3, H, start, h, n).points.back().phi.coords;
  };
  const auto a = end_at(0.2, 50);
  const auto b = end_at(0.1, 100);
  const auto c = end_at(0.05, 200);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    d1 += (a[k] - b[k]) * (a[k] - b[k]);
    d2 += (b[k] - c[k]) * (b[k] - c[k]);
  }
  const double ratio = std::sqrt(d1 / d2);
  if (ratio < 10.0 || ratio > 22.0) return false;

  Rng rng(1012);
  for (int draw = 0; draw < 50; ++draw) {
    const SmoothFn f = random_fn(1, 3, 3, rng);
    const BundlePoint pt = sample_point(so3, rng);
    if (std::abs(poisson_bracket(so3, casimir, f, pt)) > 1e-12) return false;
  }
  return true;
}

// 9. Exact jets against central differences over 500 random trees, plus the
// two exact jet identities.
bool jet_engine() {
  Rng rng(1013);
  for (int draw = 0; draw < 500; ++draw) {
    const SmoothFn f = random_fn(4, 5, 4, rng);
    const BundlePoint pt = make_point(
        make_vec(sample_box(4, -1.0, 1.0, rng),
                 SpaceModel{4, NormTag::p2, RoleTag::base}),
        make_vec(sample_box(5, -1.0, 1.0, rng),
                 SpaceModel{5, NormTag::p2, RoleTag::predual_fiber}));
    const Jet1 exact = jet(f, pt);
    const Jet1 approx = fd_jet(f, pt, 1e-4);
    double scale = 1.0;
    for (double x : exact.d_m.coords) scale = std::max(scale, std::abs(x));
    for (double x : exact.d_phi.coords) scale = std::max(scale, std::abs(x));
    scale = std::max(scale, std::abs(exact.value));
    for (std::size_t k = 0; k < 4; ++k)
      if (std::abs(exact.d_m.coords[k] - approx.d_m.coords[k]) > 1e-5 * scale)
        return false;
    for (std::size_t k = 0; k < 5; ++k)
      if (std::abs(exact.d_phi.coords[k] - approx.d_phi.coords[k]) >
          1e-5 * scale)
        return false;
  }
  for (int draw = 0; draw < 100; ++draw) {
    const SmoothFn f = pullback(random_base_fn(4, 5, rng));
    const BundlePoint pt = make_point(
        make_vec(sample_box(4, -1.0, 1.0, rng),
                 SpaceModel{4, NormTag::p2, RoleTag::base}),
        make_vec(sample_box(5, -1.0, 1.0, rng),
                 SpaceModel{5, NormTag::p2, RoleTag::predual_fiber}));
    for (double x : jet(f, pt).d_phi.coords)
      if (x != 0.0) return false;
  }
  for (int draw = 0; draw < 100; ++draw) {
    const SectionFn X = random_polynomial_section(4, 5, 2, rng);
    const SmoothFn lam = lambda_of_section(X);
    const BundlePoint pt = make_point(
        make_vec(sample_box(4, -1.0, 1.0, rng),
                 SpaceModel{4, NormTag::p2, RoleTag::base}),
        make_vec(sample_box(5, -1.0, 1.0, rng),
                 SpaceModel{5, NormTag::p2, RoleTag::predual_fiber}));
    if (jet(lam, pt).d_phi.coords != section_value(X, pt.m.coords))
      return false;
  }
  return true;
}

// 10. Same command, same seed: byte-identical reports modulo the timestamp.
bool cli_determinism() {
  const std::string cli = PREDUAL_CLI_PATH;
  const fs::path dir = fs::temp_directory_path();
  auto run_to = [&](const std::string& args, const fs::path& out) {
    const std::string cmd =
        cli + " " + args + " > " + out.string() + " 2>/dev/null";
    return std::system(cmd.c_str());
  };
  auto stripped = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    std::string line;
    while (std::getline(in, line))
      if (line.find("\"timestamp\"") == std::string::npos) os << line << '\n';
    return os.str();
  };
  const std::vector<std::string> commands = {
      "verify seqtriple:16 --draws 30 --seed 7",
      "conditions seqtriple --dims 8..1024 --draws 6 --seed 3",
      "roundtrip so3 --seed 11",
  };
  int idx = 0;
  for (const std::string& args : commands) {
    const fs::path p1 = dir / ("predual_accept_a" + std::to_string(idx));
    const fs::path p2 = dir / ("predual_accept_b" + std::to_string(idx));
    ++idx;
    if (run_to(args, p1) != 0) return false;
    if (run_to(args, p2) != 0) return false;
    const std::string s1 = stripped(p1);
    const std::string s2 = stripped(p2);
    std::remove(p1.string().c_str());
    std::remove(p2.string().c_str());
    if (s1.empty() || s1 != s2) return false;
  }
  return true;
}

struct Criterion {
  const char* name;
  bool (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"structural-relations", structural_relations},
      {"jacobi-identity", jacobi_identity},
      {"sharp-consistency", sharp_consistency},
      {"predual-conditions", predual_conditions},
      {"omega-coincidence", omega_coincidence},
      {"reconstruction-roundtrip", reconstruction_roundtrip},
      {"second-order-invariance", second_order_invariance},
      {"rigid-body-dynamics", rigid_body_dynamics},
      {"jet-engine", jet_engine},
      {"cli-determinism", cli_determinism},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::cerr << c.name << " threw: " << e.what() << "\n";
      ok = false;
    }
    std::cout << (ok ? "PASS" : "FAIL") << " - " << c.name << std::endl;
    all = all && ok;
  }
  return all ? 0 : 1;
}
