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

#include "predual/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "predual/dynamics.hpp"
#include "predual/errors.hpp"
#include "predual/models.hpp"
#include "predual/poisson.hpp"
#include "predual/reconstruct.hpp"
#include "predual/report.hpp"
#include "predual/rng.hpp"
#include "predual/serialization.hpp"
#include "predual/verify.hpp"

namespace predual {
namespace {

/// A model argument is either a JSON file on disk or a preset string.
bool looks_like_file(const std::string& spec) {
  if (spec.size() >= 5 && spec.compare(spec.size() - 5, 5, ".json") == 0)
    return true;
  std::error_code ec;
  return std::filesystem::exists(spec, ec);
}

AlgebroidModel resolve_model(const std::string& spec) {
  if (looks_like_file(spec)) return load_model_file(spec);
  return parse_preset(spec).model;
}

std::uint64_t parse_size(const std::string& token) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(token, &used);
  } catch (const std::exception&) {
    throw ValidationError("expected an unsigned integer, got '" + token + "'");
  }
  if (used != token.size())
    throw ValidationError("expected an unsigned integer, got '" + token + "'");
  return value;
}

/// Accepts "first..last" and expands the doubling schedule between them.
std::vector<std::size_t> parse_dims(const std::string& spec) {
  const auto pos = spec.find("..");
  if (pos == std::string::npos)
    throw ValidationError("--dims expects 'first..last', got '" + spec + "'");
  const auto first = parse_size(spec.substr(0, pos));
  const auto last = parse_size(spec.substr(pos + 2));
  return doubling_dims(static_cast<std::size_t>(first),
                       static_cast<std::size_t>(last));
}

/// Accepts "name=tol[,name=tol...]"; an empty string yields no overrides.
std::map<std::string, double> parse_tol_overrides(const std::string& spec) {
  std::map<std::string, double> overrides;
  if (spec.empty()) return overrides;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("--tol-overrides expects name=tol, got '" + item +
                            "'");
    const std::string name = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double tol = 0.0;
    try {
      tol = std::stod(value, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad tolerance '" + value + "' for '" + name + "'");
    }
    if (used != value.size() || !(tol >= 0.0))
      throw ValidationError("bad tolerance '" + value + "' for '" + name + "'");
    overrides[name] = tol;
  }
  return overrides;
}

RunReport base_report(std::string command, const AlgebroidModel& model,
                      std::uint64_t seed) {
  RunReport report;
  report.command = std::move(command);
  report.model_name = model.name;
  report.model_hash = fnv1a_hex(model_canonical_string(model));
  report.seed = seed;
  report.extra = Json::object();
  return report;
}

void emit_report(const RunReport& report, std::ostream& out,
                 const std::string& out_path) {
  const std::string text = report_to_json(report).dump(2) + "\n";
  out << text;
  if (!out_path.empty()) save_text_file(out_path, text);
}

/// Sum of squared fiber coordinates, the built-in conserved quantity.
SmoothFn norm2sq_fn(std::size_t base_dim, std::size_t fiber_dim) {
  std::vector<ExprPtr> terms;
  terms.reserve(fiber_dim);
  for (std::size_t k = 0; k < fiber_dim; ++k)
    terms.push_back(
        expr_product({expr_fiber_coord(k), expr_fiber_coord(k)}));
  return make_fn(expr_sum(std::move(terms)), base_dim, fiber_dim);
}

/// Deterministic start state: m = 0 and phi_k = 1/(k+1).
BundlePoint default_initial_point(const AlgebroidModel& model) {
  std::vector<double> m(model.base.dim, 0.0);
  std::vector<double> phi(model.predual.dim, 0.0);
  for (std::size_t k = 0; k < phi.size(); ++k)
    phi[k] = 1.0 / static_cast<double>(k + 1);
  return make_point(make_vec(std::move(m), model.base),
                    make_vec(std::move(phi), model.predual));
}

int cmd_verify(const std::string& model_spec, std::uint64_t seed,
               std::size_t draws, const std::string& tol_spec,
               const std::string& out_path, std::ostream& out) {
  const AlgebroidModel model = resolve_model(model_spec);
  VerifyOptions opts;
  if (draws > 0) {
    opts.draws_exact = draws;
    opts.draws_props = draws;
    opts.draws_jacobi = draws;
  }
  opts.tol_overrides = parse_tol_overrides(tol_spec);
  Rng rng(seed);
  RunReport report = base_report("verify", model, seed);
  report.checks = identity_suite(model, rng, opts);
  report.extra["draws"] = Json{{"exact", opts.draws_exact},
                               {"properties", opts.draws_props},
                               {"jacobi", opts.draws_jacobi}};
  emit_report(report, out, out_path);
  return all_pass(report.checks) ? kExitPass : kExitInconclusive;
}

int cmd_conditions(const std::string& family_spec, const std::string& dims_spec,
                   std::size_t draws, std::uint64_t seed,
                   const std::string& out_path, std::ostream& out) {
  const Preset preset = parse_preset(family_spec);
  if (!preset.family)
    throw ValidationError("preset '" + family_spec +
                          "' has no truncation family; use precotangent or "
                          "seqtriple");
  const std::vector<std::size_t> dims = parse_dims(dims_spec);
  Rng rng(seed);
  const ConditionReport conditions =
      predual_condition_diagnostic(*preset.family, dims, rng, draws);
  RunReport report = base_report("conditions", preset.model, seed);
  report.extra["conditions"] =
      Json{{"anchor_dual", membership_to_json(conditions.anchor_dual_verdict)},
           {"ad_star", membership_to_json(conditions.ad_star_verdict)},
           {"is_poisson_manifold", conditions.is_poisson_manifold},
           {"dims", dims},
           {"draws", draws}};
  emit_report(report, out, out_path);
  const bool conclusive =
      conditions.anchor_dual_verdict.verdict != Verdict::inconclusive &&
      conditions.ad_star_verdict.verdict != Verdict::inconclusive;
  return conclusive ? kExitPass : kExitInconclusive;
}

int cmd_flow(const std::string& model_spec, const std::string& hamiltonian_path,
             double step, std::size_t n_steps,
             const std::vector<std::string>& conserved_specs,
             const std::string& out_path, std::ostream& out) {
  const AlgebroidModel model = resolve_model(model_spec);
  const SmoothFn hamiltonian = load_fn_file(hamiltonian_path);
  if (hamiltonian.base_dim != model.base.dim ||
      hamiltonian.fiber_dim != model.predual.dim)
    throw ValidationError("hamiltonian dims (" +
                          std::to_string(hamiltonian.base_dim) + ", " +
                          std::to_string(hamiltonian.fiber_dim) +
                          ") do not match model '" + model.name + "'");
  std::vector<std::pair<std::string, SmoothFn>> conserved;
  for (const std::string& item : conserved_specs) {
    if (item == "norm2sq") {
      conserved.emplace_back("norm2sq",
                             norm2sq_fn(model.base.dim, model.predual.dim));
    } else {
      SmoothFn fn = load_fn_file(item);
      if (fn.base_dim != model.base.dim || fn.fiber_dim != model.predual.dim)
        throw ValidationError("conserved quantity '" + item +
                              "' dims do not match model '" + model.name + "'");
      conserved.emplace_back(std::filesystem::path(item).stem().string(),
                             std::move(fn));
    }
  }
  const BundlePoint start = default_initial_point(model);
  const Trajectory traj =
      flow(model, hamiltonian, start, step, n_steps, Integrator::rk4);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj, hamiltonian, conserved);
  save_text_file(out_path, csv.str());

  RunReport report = base_report("flow", model, 0);
  Json drifts = Json::object();
  drifts["H"] = conserved_drift(traj, hamiltonian);
  for (const auto& [name, fn] : conserved)
    drifts[name] = conserved_drift(traj, fn);
  report.extra["flow"] = Json{{"csv", out_path},
                              {"step", step},
                              {"steps", n_steps},
                              {"integrator", to_string(traj.method)},
                              {"drifts", drifts}};
  emit_report(report, out, "");
  return kExitPass;
}

int cmd_roundtrip(const std::string& model_spec, std::uint64_t seed,
                  const std::string& out_path, std::ostream& out) {
  constexpr double kTolRecover = 1e-9;
  constexpr double kTolPerturb = 1e-10;
  const AlgebroidModel model = resolve_model(model_spec);
  Rng rng(seed);
  const RoundtripReport result = roundtrip_check(model, rng, 20);
  RunReport report = base_report("roundtrip", model, seed);
  report.checks = {
      make_check("recovered-bracket", result.bracket_residual, kTolRecover),
      make_check("recovered-anchor", result.anchor_residual, kTolRecover),
      make_check("recovered-structure", result.structure_residual,
                 kTolRecover),
      make_check("recovered-leibniz", result.leibniz_residual, kTolRecover),
      make_check("perturbation-invariance", result.perturbation_shift,
                 kTolPerturb),
  };
  emit_report(report, out, out_path);
  return all_pass(report.checks) ? kExitPass : kExitInconclusive;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Banach Lie algebroid and predual Poisson bracket toolkit"};
  app.name("predual");
  app.require_subcommand(1);

  auto* verify = app.add_subcommand(
      "verify", "Run the full bracket/algebroid identity suite on a model");
  std::string verify_model;
  verify->add_option("model", verify_model, "model preset or JSON file")
      ->required();
  std::uint64_t verify_seed = 42;
  verify->add_option("--seed", verify_seed, "PRNG seed (default 42)");
  std::size_t verify_draws = 0;
  verify->add_option("--draws", verify_draws,
                     "override the per-law draw counts");
  std::string verify_tols;
  verify->add_option("--tol-overrides", verify_tols,
                     "per-check tolerances, name=tol[,name=tol...]");
  std::string verify_out;
  verify->add_option("--out", verify_out, "also write the JSON report here");

  auto* conditions = app.add_subcommand(
      "conditions",
      "Predual-invariance diagnostic over a truncation family");
  std::string cond_family;
  conditions
      ->add_option("family", cond_family,
                   "truncation family preset (precotangent, seqtriple)")
      ->required();
  std::string cond_dims = "8..4096";
  conditions->add_option("--dims", cond_dims,
                         "doubling schedule first..last (default 8..4096)");
  std::size_t cond_draws = 16;
  conditions->add_option("--draws", cond_draws, "draws per condition");
  std::uint64_t cond_seed = 42;
  conditions->add_option("--seed", cond_seed, "PRNG seed (default 42)");
  std::string cond_out;
  conditions->add_option("--out", cond_out, "also write the JSON report here");

  auto* flow_cmd = app.add_subcommand(
      "flow", "Integrate the Hamiltonian field of a function on the predual");
  std::string flow_model;
  flow_cmd->add_option("model", flow_model, "model preset or JSON file")
      ->required();
  std::string flow_hamiltonian;
  flow_cmd
      ->add_option("--hamiltonian", flow_hamiltonian,
                   "JSON file with the Hamiltonian function")
      ->required();
  double flow_step = 1e-3;
  flow_cmd->add_option("--step", flow_step, "time step (default 1e-3)");
  std::size_t flow_steps = 10000;
  flow_cmd->add_option("--steps", flow_steps,
                       "number of steps (default 10000)");
  std::vector<std::string> flow_conserved;
  flow_cmd
      ->add_option("--conserved", flow_conserved,
                   "conserved quantities: norm2sq or function files")
      ->delimiter(',');
  std::string flow_out;
  flow_cmd->add_option("--out", flow_out, "trajectory CSV path")->required();

  auto* roundtrip = app.add_subcommand(
      "roundtrip", "Recover the model from bracket and sharp oracles");
  std::string rt_model;
  roundtrip->add_option("model", rt_model, "model preset or JSON file")
      ->required();
  std::uint64_t rt_seed = 42;
  roundtrip->add_option("--seed", rt_seed, "PRNG seed (default 42)");
  std::string rt_out;
  roundtrip->add_option("--out", rt_out, "also write the JSON report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitPass : kExitValidation;
  }

  try {
    if (verify->parsed())
      return cmd_verify(verify_model, verify_seed, verify_draws, verify_tols,
                        verify_out, out);
    if (conditions->parsed())
      return cmd_conditions(cond_family, cond_dims, cond_draws, cond_seed,
                            cond_out, out);
    if (flow_cmd->parsed())
      return cmd_flow(flow_model, flow_hamiltonian, flow_step, flow_steps,
                      flow_conserved, flow_out, out);
    return cmd_roundtrip(rt_model, rt_seed, rt_out, out);
  } catch (const BlowupError& e) {
    err << "blow-up: " << e.what() << " (step " << e.step_index << ")\n";
    return kExitBlowup;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace predual
