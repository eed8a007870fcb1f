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

#include "predual/funcalg.hpp"

#include <algorithm>
#include <utility>

namespace predual {

namespace {

ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

}  // namespace

ExprPtr expr_constant(double c) {
  ExprNode n;
  n.op = ExprOp::constant;
  n.value = c;
  return node(std::move(n));
}

ExprPtr expr_base_coord(std::size_t k) {
  ExprNode n;
  n.op = ExprOp::base_coord;
  n.index = k;
  return node(std::move(n));
}

ExprPtr expr_fiber_coord(std::size_t k) {
  ExprNode n;
  n.op = ExprOp::fiber_coord;
  n.index = k;
  return node(std::move(n));
}

ExprPtr expr_sum(std::vector<ExprPtr> args) {
  if (args.empty()) throw ValidationError("sum needs at least one argument");
  ExprNode n;
  n.op = ExprOp::sum;
  n.args = std::move(args);
  return node(std::move(n));
}

ExprPtr expr_product(std::vector<ExprPtr> args) {
  if (args.empty()) throw ValidationError("product needs at least one argument");
  ExprNode n;
  n.op = ExprOp::product;
  n.args = std::move(args);
  return node(std::move(n));
}

ExprPtr expr_prim(ExprOp op, ExprPtr arg) {
  if (op != ExprOp::sin_prim && op != ExprOp::cos_prim && op != ExprOp::exp_prim)
    throw ValidationError("expr_prim expects sin, cos or exp");
  if (!arg) throw ValidationError("primitive needs an argument");
  ExprNode n;
  n.op = op;
  n.args.push_back(std::move(arg));
  return node(std::move(n));
}

ExprPtr expr_poly(std::vector<double> coeffs, ExprPtr arg) {
  if (!arg) throw ValidationError("polynomial needs an argument");
  ExprNode n;
  n.op = ExprOp::poly;
  n.coeffs = std::move(coeffs);
  n.args.push_back(std::move(arg));
  return node(std::move(n));
}

ExprPtr expr_pullback(ExprPtr base_only) {
  if (!base_only) throw ValidationError("pullback needs an argument");
  if (depends_on_fiber(*base_only))
    throw ValidationError("pullback argument must not depend on fiber coordinates");
  ExprNode n;
  n.op = ExprOp::pullback;
  n.args.push_back(std::move(base_only));
  return node(std::move(n));
}

ExprPtr expr_lambda(std::vector<ExprPtr> components) {
  if (components.empty()) throw ValidationError("lambda needs section components");
  for (const ExprPtr& c : components) {
    if (!c) throw ValidationError("lambda component is null");
    if (depends_on_fiber(*c))
      throw ValidationError("section components must not depend on fiber coordinates");
  }
  ExprNode n;
  n.op = ExprOp::lambda;
  n.args = std::move(components);
  return node(std::move(n));
}

bool depends_on_fiber(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::fiber_coord:
    case ExprOp::lambda:
      return true;
    default:
      return std::any_of(n.args.begin(), n.args.end(), [](const ExprPtr& a) {
        return depends_on_fiber(*a);
      });
  }
}

namespace {

void validate_node(const ExprNode& n, std::size_t base_dim, std::size_t fiber_dim) {
  switch (n.op) {
    case ExprOp::constant:
      return;
    case ExprOp::base_coord:
      if (n.index >= base_dim)
        throw DimensionError("base coordinate index " + std::to_string(n.index) +
                             " out of range for dim " + std::to_string(base_dim));
      return;
    case ExprOp::fiber_coord:
      if (n.index >= fiber_dim)
        throw DimensionError("fiber coordinate index " + std::to_string(n.index) +
                             " out of range for dim " + std::to_string(fiber_dim));
      return;
    case ExprOp::sum:
    case ExprOp::product:
      if (n.args.empty()) throw ValidationError("empty sum or product");
      break;
    case ExprOp::sin_prim:
    case ExprOp::cos_prim:
    case ExprOp::exp_prim:
    case ExprOp::poly:
    case ExprOp::pullback:
      if (n.args.size() != 1) throw ValidationError("unary node with wrong arity");
      break;
    case ExprOp::lambda:
      if (n.args.size() != fiber_dim)
        throw DimensionError("lambda component count " + std::to_string(n.args.size()) +
                             " does not match fiber dim " + std::to_string(fiber_dim));
      break;
  }
  for (const ExprPtr& a : n.args) validate_node(*a, base_dim, fiber_dim);
}

FiberShape shape_of(const ExprNode& n) {
  switch (n.op) {
    case ExprOp::constant:
    case ExprOp::base_coord:
    case ExprOp::pullback:
      return FiberShape::fiber_constant;
    case ExprOp::fiber_coord:
    case ExprOp::lambda:
      return FiberShape::fiber_linear;
    case ExprOp::sum: {
      bool all_constant = true;
      bool all_linear = true;
      for (const ExprPtr& a : n.args) {
        FiberShape s = shape_of(*a);
        if (s == FiberShape::fiber_general) return FiberShape::fiber_general;
        all_constant = all_constant && s == FiberShape::fiber_constant;
        all_linear = all_linear && s == FiberShape::fiber_linear;
      }
      if (all_constant) return FiberShape::fiber_constant;
      // Mixing constants into a linear sum makes it affine, not linear.
      return all_linear ? FiberShape::fiber_linear : FiberShape::fiber_general;
    }
    case ExprOp::product: {
      std::size_t linear_factors = 0;
      for (const ExprPtr& a : n.args) {
        FiberShape s = shape_of(*a);
        if (s == FiberShape::fiber_general) return FiberShape::fiber_general;
        if (s == FiberShape::fiber_linear) ++linear_factors;
      }
      if (linear_factors == 0) return FiberShape::fiber_constant;
      return linear_factors == 1 ? FiberShape::fiber_linear
                                 : FiberShape::fiber_general;
    }
    case ExprOp::sin_prim:
    case ExprOp::cos_prim:
    case ExprOp::exp_prim:
    case ExprOp::poly:
      return shape_of(*n.args.front()) == FiberShape::fiber_constant
                 ? FiberShape::fiber_constant
                 : FiberShape::fiber_general;
  }
  throw ValidationError("unknown expression node");
}

}  // namespace

SmoothFn make_fn(ExprPtr node, std::size_t base_dim, std::size_t fiber_dim) {
  if (!node) throw ValidationError("null expression");
  validate_node(*node, base_dim, fiber_dim);
  return SmoothFn{node, base_dim, fiber_dim, shape_of(*node)};
}

SmoothFn fn_constant(double c, std::size_t base_dim, std::size_t fiber_dim) {
  return make_fn(expr_constant(c), base_dim, fiber_dim);
}

SmoothFn fn_base_coord(std::size_t k, std::size_t base_dim, std::size_t fiber_dim) {
  return make_fn(expr_base_coord(k), base_dim, fiber_dim);
}

SmoothFn fn_fiber_coord(std::size_t k, std::size_t base_dim, std::size_t fiber_dim) {
  return make_fn(expr_fiber_coord(k), base_dim, fiber_dim);
}

namespace {

void check_same_dims(const SmoothFn& f, const SmoothFn& g) {
  if (f.base_dim != g.base_dim || f.fiber_dim != g.fiber_dim)
    throw DimensionError("function dimensions do not match");
}

}  // namespace

SmoothFn fn_sin(const SmoothFn& f) {
  return make_fn(expr_prim(ExprOp::sin_prim, f.node), f.base_dim, f.fiber_dim);
}

SmoothFn fn_cos(const SmoothFn& f) {
  return make_fn(expr_prim(ExprOp::cos_prim, f.node), f.base_dim, f.fiber_dim);
}

SmoothFn fn_exp(const SmoothFn& f) {
  return make_fn(expr_prim(ExprOp::exp_prim, f.node), f.base_dim, f.fiber_dim);
}

SmoothFn fn_poly(std::vector<double> coeffs, const SmoothFn& arg) {
  return make_fn(expr_poly(std::move(coeffs), arg.node), arg.base_dim, arg.fiber_dim);
}

SmoothFn operator+(const SmoothFn& f, const SmoothFn& g) {
  check_same_dims(f, g);
  return make_fn(expr_sum({f.node, g.node}), f.base_dim, f.fiber_dim);
}

SmoothFn operator-(const SmoothFn& f) { return -1.0 * f; }

SmoothFn operator-(const SmoothFn& f, const SmoothFn& g) { return f + (-g); }

SmoothFn operator*(const SmoothFn& f, const SmoothFn& g) {
  check_same_dims(f, g);
  return make_fn(expr_product({f.node, g.node}), f.base_dim, f.fiber_dim);
}

SmoothFn operator*(double c, const SmoothFn& f) {
  return make_fn(expr_product({expr_constant(c), f.node}), f.base_dim, f.fiber_dim);
}

SmoothFn pullback(const SmoothFn& f_base) {
  return make_fn(expr_pullback(f_base.node), f_base.base_dim, f_base.fiber_dim);
}

SectionFn make_section(std::size_t base_dim, std::vector<ExprPtr> components) {
  if (components.empty()) throw DimensionError("section needs at least one component");
  for (const ExprPtr& c : components) {
    if (!c) throw ValidationError("section component is null");
    if (depends_on_fiber(*c))
      throw ValidationError("section components must not depend on fiber coordinates");
    validate_node(*c, base_dim, 0);
  }
  return SectionFn{std::move(components), base_dim};
}

SectionFn section_constant(std::size_t base_dim, const std::vector<double>& v) {
  std::vector<ExprPtr> comps;
  comps.reserve(v.size());
  for (double c : v) comps.push_back(expr_constant(c));
  return make_section(base_dim, std::move(comps));
}

SectionFn section_basis(std::size_t base_dim, std::size_t fiber_dim, std::size_t j) {
  if (j >= fiber_dim)
    throw DimensionError("basis index " + std::to_string(j) +
                         " out of range for fiber dim " + std::to_string(fiber_dim));
  std::vector<double> v(fiber_dim, 0.0);
  v[j] = 1.0;
  return section_constant(base_dim, v);
}

SectionFn section_linear(std::size_t base_dim,
                         const std::vector<std::vector<double>>& A) {
  std::vector<ExprPtr> comps;
  comps.reserve(A.size());
  for (const std::vector<double>& row : A) {
    if (row.size() != base_dim)
      throw DimensionError("matrix row length does not match base dim");
    std::vector<ExprPtr> terms;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0.0)
        terms.push_back(expr_product({expr_constant(row[i]), expr_base_coord(i)}));
    comps.push_back(terms.empty() ? expr_constant(0.0)
                                  : expr_sum(std::move(terms)));
  }
  return make_section(base_dim, std::move(comps));
}

SmoothFn lambda_of_section(const SectionFn& X) {
  return make_fn(expr_lambda(X.components), X.base_dim, X.components.size());
}

BundlePoint make_point(Vec m, Vec phi) {
  if (m.space.role_tag != RoleTag::base)
    throw RoleError("bundle point base slot must have role base");
  if (phi.space.role_tag != RoleTag::predual_fiber)
    throw RoleError("bundle point fiber slot must have role predual");
  return BundlePoint{std::move(m), std::move(phi)};
}

SectionJet section_jet(const SectionFn& X, const std::vector<double>& m) {
  if (m.size() != X.base_dim)
    throw DimensionError("point dimension does not match section base dim");
  const std::size_t nb = m.size();
  std::vector<Fwd<double>> ms;
  ms.reserve(nb);
  for (std::size_t i = 0; i < nb; ++i) ms.push_back(seed<double>(m[i], nb, i));
  static const std::vector<Fwd<double>> no_phi;
  SectionJet out;
  out.value.reserve(X.components.size());
  out.deriv.reserve(X.components.size());
  for (const ExprPtr& c : X.components) {
    Fwd<double> r = detail::eval_node<Fwd<double>>(*c, ms, no_phi);
    out.value.push_back(r.v);
    if (r.d.empty()) r.d.assign(nb, 0.0);
    out.deriv.push_back(std::move(r.d));
  }
  return out;
}

double eval(const SmoothFn& f, const BundlePoint& pt) {
  return eval_generic<double>(f, pt.m.coords, pt.phi.coords);
}

Jet1 jet(const SmoothFn& f, const BundlePoint& pt) {
  JetG<double> g = jet_generic<double>(f, pt.m.coords, pt.phi.coords);
  Jet1 out;
  out.value = g.value;
  SpaceModel dm{f.base_dim, dual_norm_tag(pt.m.space.norm_tag), RoleTag::base};
  SpaceModel dphi{f.fiber_dim, dual_norm_tag(pt.phi.space.norm_tag), RoleTag::fiber};
  out.d_m = make_vec(std::move(g.d_m), dm);
  out.d_phi = make_vec(std::move(g.d_phi), dphi);
  return out;
}

namespace {

double central_diff(const SmoothFn& f, std::vector<double> m, std::vector<double> phi,
                    bool base_slot, std::size_t k, double h) {
  std::vector<double>& c = base_slot ? m : phi;
  const double saved = c[k];
  c[k] = saved + h;
  const double fp = eval_generic<double>(f, m, phi);
  c[k] = saved - h;
  const double fm = eval_generic<double>(f, m, phi);
  return (fp - fm) / (2.0 * h);
}

double richardson(const SmoothFn& f, const std::vector<double>& m,
                  const std::vector<double>& phi, bool base_slot, std::size_t k,
                  double h) {
  const double d1 = central_diff(f, m, phi, base_slot, k, h);
  const double d2 = central_diff(f, m, phi, base_slot, k, h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

Jet1 fd_jet(const SmoothFn& f, const BundlePoint& pt, double h) {
  if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
  const std::vector<double>& m = pt.m.coords;
  const std::vector<double>& phi = pt.phi.coords;
  Jet1 out;
  out.value = eval(f, pt);
  std::vector<double> dm(f.base_dim), dphi(f.fiber_dim);
  for (std::size_t i = 0; i < f.base_dim; ++i)
    dm[i] = richardson(f, m, phi, true, i, h);
  for (std::size_t j = 0; j < f.fiber_dim; ++j)
    dphi[j] = richardson(f, m, phi, false, j, h);
  SpaceModel dms{f.base_dim, dual_norm_tag(pt.m.space.norm_tag), RoleTag::base};
  SpaceModel dps{f.fiber_dim, dual_norm_tag(pt.phi.space.norm_tag), RoleTag::fiber};
  out.d_m = make_vec(std::move(dm), dms);
  out.d_phi = make_vec(std::move(dphi), dps);
  return out;
}

}  // namespace predual
