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
#include <memory>
#include <string>
#include <vector>

#include "predual/errors.hpp"
#include "predual/forward.hpp"
#include "predual/spaces.hpp"

namespace predual {

/// Node kinds of the closed smooth-function algebra on the bundle.
enum class ExprOp {
  constant,
  base_coord,   // m_k
  fiber_coord,  // phi_k
  sum,
  product,
  sin_prim,
  cos_prim,
  exp_prim,
  poly,      // c0 + c1 t + ... applied to args[0]
  pullback,  // base-only expression, constant along fibers
  lambda,    // (m,phi) -> sum_j phi_j X^j(m), args are the section components
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable expression-tree node; shared freely across functions and threads.
struct ExprNode {
  ExprOp op = ExprOp::constant;
  double value = 0.0;          // constant
  std::size_t index = 0;       // base_coord / fiber_coord
  std::vector<ExprPtr> args;   // children; for lambda, the fiber components
  std::vector<double> coeffs;  // poly coefficients, ascending degree
};

ExprPtr expr_constant(double c);
ExprPtr expr_base_coord(std::size_t k);
ExprPtr expr_fiber_coord(std::size_t k);
ExprPtr expr_sum(std::vector<ExprPtr> args);
ExprPtr expr_product(std::vector<ExprPtr> args);
ExprPtr expr_prim(ExprOp op, ExprPtr arg);  // sin_prim, cos_prim or exp_prim
ExprPtr expr_poly(std::vector<double> coeffs, ExprPtr arg);
ExprPtr expr_pullback(ExprPtr base_only);
ExprPtr expr_lambda(std::vector<ExprPtr> components);

/// True if the tree reads fiber coordinates anywhere (lambda nodes do).
bool depends_on_fiber(const ExprNode& node);

/// Structural dependence on the fiber argument, tracked without numerics.
/// fiber_linear means homogeneous linear in phi for fixed m.
enum class FiberShape { fiber_constant, fiber_linear, fiber_general };

/// A smooth scalar function on the trivialized bundle, with fixed dimensions
/// and a structurally derived fiber shape.
struct SmoothFn {
  ExprPtr node;
  std::size_t base_dim = 0;
  std::size_t fiber_dim = 0;
  FiberShape shape = FiberShape::fiber_general;
};

/// Validates indices and component counts of the tree against the dimensions
/// and computes the fiber shape.
SmoothFn make_fn(ExprPtr node, std::size_t base_dim, std::size_t fiber_dim);

SmoothFn fn_constant(double c, std::size_t base_dim, std::size_t fiber_dim);
SmoothFn fn_base_coord(std::size_t k, std::size_t base_dim, std::size_t fiber_dim);
SmoothFn fn_fiber_coord(std::size_t k, std::size_t base_dim, std::size_t fiber_dim);
SmoothFn fn_sin(const SmoothFn& f);
SmoothFn fn_cos(const SmoothFn& f);
SmoothFn fn_exp(const SmoothFn& f);
SmoothFn fn_poly(std::vector<double> coeffs, const SmoothFn& arg);

SmoothFn operator+(const SmoothFn& f, const SmoothFn& g);
SmoothFn operator-(const SmoothFn& f);
SmoothFn operator-(const SmoothFn& f, const SmoothFn& g);
SmoothFn operator*(const SmoothFn& f, const SmoothFn& g);
SmoothFn operator*(double c, const SmoothFn& f);

/// Wraps a base-only function as a fiber-wise constant function on the bundle.
SmoothFn pullback(const SmoothFn& f_base);

/// A smooth section of the trivial bundle: one base-only component expression
/// per fiber coordinate.
struct SectionFn {
  std::vector<ExprPtr> components;
  std::size_t base_dim = 0;
};

SectionFn make_section(std::size_t base_dim, std::vector<ExprPtr> components);
SectionFn section_constant(std::size_t base_dim, const std::vector<double>& v);
SectionFn section_basis(std::size_t base_dim, std::size_t fiber_dim, std::size_t j);
/// X^j(m) = sum_i A[j][i] m_i for a fiber_dim x base_dim matrix A.
SectionFn section_linear(std::size_t base_dim, const std::vector<std::vector<double>>& A);

/// The fiber-wise linear function (m,phi) -> sum_j phi_j X^j(m). The fiber
/// dimension is the section's component count.
SmoothFn lambda_of_section(const SectionFn& X);

/// A point of the trivialized predual bundle.
struct BundlePoint {
  Vec m;    // role base
  Vec phi;  // role predual
};

BundlePoint make_point(Vec m, Vec phi);

/// Exact first jet at a point: value, base differential, fiber differential.
struct Jet1 {
  double value = 0.0;
  Vec d_m;    // dual of the base
  Vec d_phi;  // fiber (dual of the predual)
};

/// First jet with generic scalar entries, for nested differentiation.
template <typename S>
struct JetG {
  S value{};
  std::vector<S> d_m;
  std::vector<S> d_phi;
};

namespace detail {

template <typename S>
S eval_node(const ExprNode& n, const std::vector<S>& m, const std::vector<S>& phi) {
  switch (n.op) {
    case ExprOp::constant:
      return lift<S>(n.value);
    case ExprOp::base_coord:
      if (n.index >= m.size())
        throw DimensionError("base coordinate index " + std::to_string(n.index) +
                             " out of range for dim " + std::to_string(m.size()));
      return m[n.index];
    case ExprOp::fiber_coord:
      if (n.index >= phi.size())
        throw DimensionError("fiber coordinate index " + std::to_string(n.index) +
                             " out of range for dim " + std::to_string(phi.size()));
      return phi[n.index];
    case ExprOp::sum: {
      S acc = eval_node(*n.args.front(), m, phi);
      for (std::size_t i = 1; i < n.args.size(); ++i)
        acc = acc + eval_node(*n.args[i], m, phi);
      return acc;
    }
    case ExprOp::product: {
      S acc = eval_node(*n.args.front(), m, phi);
      for (std::size_t i = 1; i < n.args.size(); ++i)
        acc = acc * eval_node(*n.args[i], m, phi);
      return acc;
    }
    case ExprOp::sin_prim: {
      using std::sin;
      return sin(eval_node(*n.args.front(), m, phi));
    }
    case ExprOp::cos_prim: {
      using std::cos;
      return cos(eval_node(*n.args.front(), m, phi));
    }
    case ExprOp::exp_prim: {
      using std::exp;
      return exp(eval_node(*n.args.front(), m, phi));
    }
    case ExprOp::poly: {
      S x = eval_node(*n.args.front(), m, phi);
      S acc = lift<S>(n.coeffs.empty() ? 0.0 : n.coeffs.back());
      for (std::size_t k = n.coeffs.size(); k-- > 1;)
        acc = acc * x + lift<S>(n.coeffs[k - 1]);
      return acc;
    }
    case ExprOp::pullback:
      return eval_node(*n.args.front(), m, phi);
    case ExprOp::lambda: {
      if (n.args.size() != phi.size())
        throw DimensionError("lambda component count " +
                             std::to_string(n.args.size()) +
                             " does not match fiber dim " +
                             std::to_string(phi.size()));
      S acc = lift<S>(0.0);
      for (std::size_t j = 0; j < n.args.size(); ++j)
        acc = acc + phi[j] * eval_node(*n.args[j], m, phi);
      return acc;
    }
  }
  throw ValidationError("unknown expression node");
}

}  // namespace detail

/// Evaluates f on raw coordinates with any scalar type.
template <typename S>
S eval_generic(const SmoothFn& f, const std::vector<S>& m, const std::vector<S>& phi) {
  if (m.size() != f.base_dim || phi.size() != f.fiber_dim)
    throw DimensionError("point dimensions do not match function dimensions");
  return detail::eval_node<S>(*f.node, m, phi);
}

/// Exact first jet on raw coordinates: seeds every coordinate once and
/// propagates value-derivative pairs through the tree.
template <typename S>
JetG<S> jet_generic(const SmoothFn& f, const std::vector<S>& m, const std::vector<S>& phi) {
  if (m.size() != f.base_dim || phi.size() != f.fiber_dim)
    throw DimensionError("point dimensions do not match function dimensions");
  const std::size_t nb = m.size();
  const std::size_t nf = phi.size();
  const std::size_t n = nb + nf;
  std::vector<Fwd<S>> ms;
  ms.reserve(nb);
  for (std::size_t i = 0; i < nb; ++i) ms.push_back(seed<S>(m[i], n, i));
  std::vector<Fwd<S>> phis;
  phis.reserve(nf);
  for (std::size_t j = 0; j < nf; ++j) phis.push_back(seed<S>(phi[j], n, nb + j));
  Fwd<S> r = detail::eval_node<Fwd<S>>(*f.node, ms, phis);
  JetG<S> out;
  out.value = r.v;
  out.d_m.assign(nb, lift<S>(0.0));
  out.d_phi.assign(nf, lift<S>(0.0));
  if (!r.d.empty()) {
    for (std::size_t i = 0; i < nb; ++i) out.d_m[i] = r.d[i];
    for (std::size_t j = 0; j < nf; ++j) out.d_phi[j] = r.d[nb + j];
  }
  return out;
}

/// Section value X(m) with any scalar type.
template <typename S>
std::vector<S> section_value(const SectionFn& X, const std::vector<S>& m) {
  if (m.size() != X.base_dim)
    throw DimensionError("point dimension does not match section base dim");
  static const std::vector<S> no_phi;
  std::vector<S> out;
  out.reserve(X.components.size());
  for (const ExprPtr& c : X.components)
    out.push_back(detail::eval_node<S>(*c, m, no_phi));
  return out;
}

/// Directional derivative DX(m)[v] via a single forward seed slot.
template <typename S>
std::vector<S> section_dir_deriv(const SectionFn& X, const std::vector<S>& m,
                                 const std::vector<S>& v) {
  if (m.size() != X.base_dim || v.size() != X.base_dim)
    throw DimensionError("direction dimension does not match section base dim");
  std::vector<Fwd<S>> ms;
  ms.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    ms.push_back(Fwd<S>(m[i], std::vector<S>{v[i]}));
  static const std::vector<Fwd<S>> no_phi;
  std::vector<S> out;
  out.reserve(X.components.size());
  for (const ExprPtr& c : X.components) {
    Fwd<S> r = detail::eval_node<Fwd<S>>(*c, ms, no_phi);
    out.push_back(r.d.empty() ? lift<S>(0.0) : r.d[0]);
  }
  return out;
}

/// Value and full derivative matrix of a section at m; deriv[j][i] = d X^j / d m_i.
struct SectionJet {
  std::vector<double> value;
  std::vector<std::vector<double>> deriv;
};

SectionJet section_jet(const SectionFn& X, const std::vector<double>& m);

double eval(const SmoothFn& f, const BundlePoint& pt);
Jet1 jet(const SmoothFn& f, const BundlePoint& pt);

/// Central-difference jet with one Richardson step; test oracle only.
Jet1 fd_jet(const SmoothFn& f, const BundlePoint& pt, double h);

}  // namespace predual
