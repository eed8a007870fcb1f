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

#include "predual/serialization.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "predual/errors.hpp"

namespace predual {

namespace {

std::string op_name(ExprOp op) {
  switch (op) {
    case ExprOp::constant: return "constant";
    case ExprOp::base_coord: return "base_coord";
    case ExprOp::fiber_coord: return "fiber_coord";
    case ExprOp::sum: return "sum";
    case ExprOp::product: return "product";
    case ExprOp::sin_prim: return "sin";
    case ExprOp::cos_prim: return "cos";
    case ExprOp::exp_prim: return "exp";
    case ExprOp::poly: return "poly";
    case ExprOp::pullback: return "pullback";
    case ExprOp::lambda: return "lambda";
  }
  throw ValidationError("unknown expression op");
}

const Json& require(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(std::string("missing JSON key: ") + key);
  return *it;
}

std::vector<ExprPtr> args_from_json(const Json& j) {
  const Json& arr = require(j, "args");
  if (!arr.is_array()) throw ValidationError("args must be an array");
  std::vector<ExprPtr> out;
  out.reserve(arr.size());
  for (const Json& a : arr) out.push_back(expr_from_json(a));
  return out;
}

}  // namespace

Json expr_to_json(const ExprPtr& e) {
  if (!e) throw ValidationError("cannot serialize a null expression");
  Json j;
  j["op"] = op_name(e->op);
  switch (e->op) {
    case ExprOp::constant:
      j["value"] = e->value;
      break;
    case ExprOp::base_coord:
    case ExprOp::fiber_coord:
      j["index"] = e->index;
      break;
    case ExprOp::poly:
      j["coeffs"] = e->coeffs;
      [[fallthrough]];
    default: {
      Json args = Json::array();
      for (const ExprPtr& a : e->args) args.push_back(expr_to_json(a));
      j["args"] = std::move(args);
    }
  }
  return j;
}

ExprPtr expr_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("expression node must be an object");
  const std::string op = require(j, "op").get<std::string>();
  if (op == "constant") return expr_constant(require(j, "value").get<double>());
  if (op == "base_coord")
    return expr_base_coord(require(j, "index").get<std::size_t>());
  if (op == "fiber_coord")
    return expr_fiber_coord(require(j, "index").get<std::size_t>());
  if (op == "sum") return expr_sum(args_from_json(j));
  if (op == "product") return expr_product(args_from_json(j));
  if (op == "sin" || op == "cos" || op == "exp") {
    std::vector<ExprPtr> args = args_from_json(j);
    if (args.size() != 1)
      throw ValidationError(op + " takes exactly one argument");
    const ExprOp prim = op == "sin"   ? ExprOp::sin_prim
                        : op == "cos" ? ExprOp::cos_prim
                                      : ExprOp::exp_prim;
    return expr_prim(prim, std::move(args.front()));
  }
  if (op == "poly") {
    std::vector<ExprPtr> args = args_from_json(j);
    if (args.size() != 1) throw ValidationError("poly takes exactly one argument");
    return expr_poly(require(j, "coeffs").get<std::vector<double>>(),
                     std::move(args.front()));
  }
  if (op == "pullback") {
    std::vector<ExprPtr> args = args_from_json(j);
    if (args.size() != 1)
      throw ValidationError("pullback takes exactly one argument");
    return expr_pullback(std::move(args.front()));
  }
  if (op == "lambda") return expr_lambda(args_from_json(j));
  throw ValidationError("unknown expression op: " + op);
}

Json section_to_json(const SectionFn& x) {
  Json arr = Json::array();
  for (const ExprPtr& c : x.components) arr.push_back(expr_to_json(c));
  return arr;
}

SectionFn section_from_json(const Json& j, std::size_t base_dim) {
  if (!j.is_array()) throw ValidationError("section must be an array");
  std::vector<ExprPtr> comps;
  comps.reserve(j.size());
  for (const Json& c : j) comps.push_back(expr_from_json(c));
  return make_section(base_dim, std::move(comps));
}

Json fn_to_json(const SmoothFn& f) {
  Json j;
  j["base_dim"] = f.base_dim;
  j["fiber_dim"] = f.fiber_dim;
  j["tree"] = expr_to_json(f.node);
  return j;
}

SmoothFn fn_from_json(const Json& j) {
  return make_fn(expr_from_json(require(j, "tree")),
                 require(j, "base_dim").get<std::size_t>(),
                 require(j, "fiber_dim").get<std::size_t>());
}

Json space_to_json(const SpaceModel& s) {
  Json j;
  j["dim"] = s.dim;
  j["norm"] = to_string(s.norm_tag);
  j["role"] = to_string(s.role_tag);
  return j;
}

SpaceModel space_from_json(const Json& j) {
  SpaceModel s;
  s.dim = require(j, "dim").get<std::size_t>();
  s.norm_tag = norm_tag_from_string(require(j, "norm").get<std::string>());
  s.role_tag = role_tag_from_string(require(j, "role").get<std::string>());
  return s;
}

namespace {

Json anchor_to_json(const AnchorField& a) {
  Json j;
  switch (a.kind) {
    case AnchorField::Kind::zero:
      j["kind"] = "zero";
      j["base_dim"] = a.base_dim;
      j["fiber_dim"] = a.fiber_dim;
      break;
    case AnchorField::Kind::diagonal:
      j["kind"] = "diagonal";
      j["weights"] = a.diag;
      break;
    case AnchorField::Kind::dense:
      j["kind"] = "dense";
      j["matrix"] = a.dense;
      break;
    case AnchorField::Kind::expr: {
      j["kind"] = "expr";
      Json rows = Json::array();
      for (const auto& row : a.entries) {
        Json cells = Json::array();
        for (const ExprPtr& e : row) cells.push_back(expr_to_json(e));
        rows.push_back(std::move(cells));
      }
      j["entries"] = std::move(rows);
      break;
    }
  }
  return j;
}

AnchorField anchor_from_json(const Json& j, std::size_t base_dim) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "zero") {
    return make_anchor_zero(require(j, "base_dim").get<std::size_t>(),
                            require(j, "fiber_dim").get<std::size_t>());
  }
  if (kind == "identity")
    return make_anchor_identity(require(j, "dim").get<std::size_t>());
  if (kind == "diagonal") {
    return make_anchor_diagonal(
        require(j, "weights").get<std::vector<double>>());
  }
  if (kind == "dense") {
    return make_anchor_dense(
        require(j, "matrix").get<std::vector<std::vector<double>>>());
  }
  if (kind == "expr") {
    const Json& rows = require(j, "entries");
    if (!rows.is_array()) throw ValidationError("anchor entries must be rows");
    std::vector<std::vector<ExprPtr>> entries;
    entries.reserve(rows.size());
    for (const Json& row : rows) {
      if (!row.is_array())
        throw ValidationError("anchor entry row must be an array");
      std::vector<ExprPtr> cells;
      cells.reserve(row.size());
      for (const Json& cell : row) cells.push_back(expr_from_json(cell));
      entries.push_back(std::move(cells));
    }
    return make_anchor_expr(base_dim, std::move(entries));
  }
  throw ValidationError("unknown anchor kind: " + kind);
}

Json structure_to_json(const StructureField& c) {
  Json j;
  switch (c.kind) {
    case StructureField::Kind::zero:
      j["kind"] = "zero";
      j["fiber_dim"] = c.fiber_dim;
      break;
    case StructureField::Kind::dense: {
      j["kind"] = "dense";
      const std::size_t f = c.fiber_dim;
      static const std::vector<double> no_m;
      Json tensor = Json::array();
      for (std::size_t i = 0; i < f; ++i) {
        Json plane = Json::array();
        for (std::size_t a = 0; a < f; ++a) {
          Json row = Json::array();
          for (std::size_t b = 0; b < f; ++b)
            row.push_back(structure_entry(c, no_m, i, a, b));
          plane.push_back(std::move(row));
        }
        tensor.push_back(std::move(plane));
      }
      j["tensor"] = std::move(tensor);
      break;
    }
    case StructureField::Kind::expr: {
      j["kind"] = "expr";
      Json pairs = Json::array();
      for (const auto& col : c.expr_pairs) {
        Json cells = Json::array();
        for (const ExprPtr& e : col) cells.push_back(expr_to_json(e));
        pairs.push_back(std::move(cells));
      }
      j["pairs"] = std::move(pairs);
      break;
    }
  }
  return j;
}

StructureField structure_from_json(const Json& j, std::size_t base_dim,
                                   std::size_t fiber_dim) {
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "zero")
    return make_structure_zero(require(j, "fiber_dim").get<std::size_t>());
  if (kind == "dense") {
    return make_structure_from_full(
        require(j, "tensor")
            .get<std::vector<std::vector<std::vector<double>>>>());
  }
  if (kind == "expr") {
    const Json& rows = require(j, "pairs");
    if (!rows.is_array()) throw ValidationError("structure pairs must be rows");
    std::vector<std::vector<ExprPtr>> pairs;
    pairs.reserve(rows.size());
    for (const Json& row : rows) {
      if (!row.is_array())
        throw ValidationError("structure pair must be an array");
      std::vector<ExprPtr> cells;
      cells.reserve(row.size());
      for (const Json& cell : row) cells.push_back(expr_from_json(cell));
      pairs.push_back(std::move(cells));
    }
    return make_structure_expr(fiber_dim, base_dim, std::move(pairs));
  }
  throw ValidationError("unknown structure kind: " + kind);
}

}  // namespace

Json model_to_json(const AlgebroidModel& model) {
  Json j;
  j["name"] = model.name;
  j["base"] = space_to_json(model.base);
  j["fiber"] = space_to_json(model.fiber);
  j["predual"] = space_to_json(model.predual);
  j["anchor"] = anchor_to_json(model.anchor);
  j["structure"] = structure_to_json(model.structure);
  return j;
}

AlgebroidModel model_from_json(const Json& j) {
  const SpaceModel base = space_from_json(require(j, "base"));
  const SpaceModel fiber = space_from_json(require(j, "fiber"));
  const SpaceModel predual = space_from_json(require(j, "predual"));
  return make_algebroid(require(j, "name").get<std::string>(), base, fiber,
                        predual, anchor_from_json(require(j, "anchor"), base.dim),
                        structure_from_json(require(j, "structure"), base.dim,
                                            fiber.dim));
}

std::string model_canonical_string(const AlgebroidModel& model) {
  return model_to_json(model).dump();
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open file for writing: " + path);
  out << text;
  if (!out) throw IoError("failed writing file: " + path);
}

AlgebroidModel load_model_file(const std::string& path) {
  return model_from_json(load_json_file(path));
}

SmoothFn load_fn_file(const std::string& path) {
  return fn_from_json(load_json_file(path));
}

}  // namespace predual
