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

#include "predual/algebroid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace predual {

AnchorField make_anchor_zero(std::size_t base_dim, std::size_t fiber_dim) {
  if (base_dim < 1 || fiber_dim < 1)
    throw DimensionError("anchor dimensions must be >= 1");
  AnchorField a;
  a.kind = AnchorField::Kind::zero;
  a.base_dim = base_dim;
  a.fiber_dim = fiber_dim;
  return a;
}

AnchorField make_anchor_identity(std::size_t dim) {
  return make_anchor_diagonal(std::vector<double>(dim, 1.0));
}

AnchorField make_anchor_diagonal(std::vector<double> weights) {
  if (weights.empty()) throw DimensionError("diagonal anchor needs weights");
  AnchorField a;
  a.kind = AnchorField::Kind::diagonal;
  a.base_dim = weights.size();
  a.fiber_dim = weights.size();
  a.diag = std::move(weights);
  return a;
}

AnchorField make_anchor_dense(std::vector<std::vector<double>> matrix) {
  if (matrix.empty() || matrix.front().empty())
    throw DimensionError("dense anchor needs a nonempty matrix");
  const std::size_t cols = matrix.front().size();
  for (const std::vector<double>& row : matrix)
    if (row.size() != cols) throw DimensionError("dense anchor matrix is ragged");
  AnchorField a;
  a.kind = AnchorField::Kind::dense;
  a.base_dim = matrix.size();
  a.fiber_dim = cols;
  a.dense = std::move(matrix);
  return a;
}

AnchorField make_anchor_expr(std::size_t base_dim,
                             std::vector<std::vector<ExprPtr>> entries) {
  if (entries.size() != base_dim || base_dim < 1)
    throw DimensionError("expr anchor row count must equal base dim");
  const std::size_t cols = entries.front().size();
  if (cols < 1) throw DimensionError("expr anchor needs columns");
  for (const std::vector<ExprPtr>& row : entries) {
    if (row.size() != cols) throw DimensionError("expr anchor matrix is ragged");
    for (const ExprPtr& e : row) {
      if (!e) throw ValidationError("expr anchor entry is null");
      if (depends_on_fiber(*e))
        throw ValidationError("anchor entries must be base-only expressions");
      // Index range check: reuse the smooth-function validator.
      make_fn(e, base_dim, 0);
    }
  }
  AnchorField a;
  a.kind = AnchorField::Kind::expr;
  a.base_dim = base_dim;
  a.fiber_dim = cols;
  a.entries = std::move(entries);
  return a;
}

std::size_t pair_index(std::size_t j, std::size_t k, std::size_t fiber_dim) {
  if (!(j < k && k < fiber_dim))
    throw DimensionError("pair index needs j < k < fiber dim");
  return j * fiber_dim - j * (j + 1) / 2 + (k - j - 1);
}

StructureField make_structure_zero(std::size_t fiber_dim) {
  if (fiber_dim < 1) throw DimensionError("structure field dim must be >= 1");
  StructureField c;
  c.kind = StructureField::Kind::zero;
  c.fiber_dim = fiber_dim;
  return c;
}

StructureField make_structure_from_full(
    const std::vector<std::vector<std::vector<double>>>& c) {
  const std::size_t f = c.size();
  if (f < 1) throw DimensionError("structure tensor must be nonempty");
  for (const auto& plane : c) {
    if (plane.size() != f) throw DimensionError("structure tensor is ragged");
    for (const auto& row : plane)
      if (row.size() != f) throw DimensionError("structure tensor is ragged");
  }
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j)
      for (std::size_t k = j; k < f; ++k)
        if (c[i][j][k] != -c[i][k][j])
          throw ValidationError("structure tensor is not skew-symmetric");
  std::vector<std::vector<double>> pairs;
  pairs.reserve(f * (f - 1) / 2);
  for (std::size_t j = 0; j < f; ++j)
    for (std::size_t k = j + 1; k < f; ++k) {
      std::vector<double> col(f);
      for (std::size_t i = 0; i < f; ++i) col[i] = c[i][j][k];
      pairs.push_back(std::move(col));
    }
  return make_structure_pairs(f, std::move(pairs));
}

StructureField make_structure_pairs(std::size_t fiber_dim,
                                    std::vector<std::vector<double>> pairs) {
  if (fiber_dim < 1) throw DimensionError("structure field dim must be >= 1");
  if (pairs.size() != fiber_dim * (fiber_dim - 1) / 2)
    throw DimensionError("structure pair table has wrong size");
  for (const std::vector<double>& col : pairs)
    if (col.size() != fiber_dim)
      throw DimensionError("structure pair column has wrong length");
  StructureField c;
  c.kind = StructureField::Kind::dense;
  c.fiber_dim = fiber_dim;
  c.dense_pairs = std::move(pairs);
  return c;
}

StructureField make_structure_expr(std::size_t fiber_dim, std::size_t base_dim,
                                   std::vector<std::vector<ExprPtr>> pairs) {
  if (fiber_dim < 1) throw DimensionError("structure field dim must be >= 1");
  if (pairs.size() != fiber_dim * (fiber_dim - 1) / 2)
    throw DimensionError("structure pair table has wrong size");
  for (const std::vector<ExprPtr>& col : pairs) {
    if (col.size() != fiber_dim)
      throw DimensionError("structure pair column has wrong length");
    for (const ExprPtr& e : col) {
      if (!e) throw ValidationError("structure entry is null");
      if (depends_on_fiber(*e))
        throw ValidationError("structure entries must be base-only expressions");
      make_fn(e, base_dim, 0);
    }
  }
  StructureField c;
  c.kind = StructureField::Kind::expr;
  c.fiber_dim = fiber_dim;
  c.expr_pairs = std::move(pairs);
  return c;
}

double structure_entry(const StructureField& C, const std::vector<double>& m,
                       std::size_t i, std::size_t j, std::size_t k) {
  if (i >= C.fiber_dim || j >= C.fiber_dim || k >= C.fiber_dim)
    throw DimensionError("structure entry index out of range");
  if (j == k || C.kind == StructureField::Kind::zero) return 0.0;
  const double sign = j < k ? 1.0 : -1.0;
  const std::size_t p = j < k ? pair_index(j, k, C.fiber_dim)
                              : pair_index(k, j, C.fiber_dim);
  if (C.kind == StructureField::Kind::dense) return sign * C.dense_pairs[p][i];
  static const std::vector<double> no_phi;
  return sign * detail::eval_node<double>(*C.expr_pairs[p][i], m, no_phi);
}

AlgebroidModel make_algebroid(std::string name, SpaceModel base, SpaceModel fiber,
                              SpaceModel predual, AnchorField anchor,
                              StructureField structure) {
  if (base.role_tag != RoleTag::base || fiber.role_tag != RoleTag::fiber ||
      predual.role_tag != RoleTag::predual_fiber)
    throw RoleError("model spaces must carry base, fiber and predual roles");
  if (anchor.base_dim != base.dim || anchor.fiber_dim != fiber.dim)
    throw DimensionError("anchor dimensions do not match model spaces");
  if (structure.fiber_dim != fiber.dim)
    throw DimensionError("structure field dimension does not match fiber");
  if (predual.dim != fiber.dim)
    throw DimensionError("predual dimension must match fiber dimension");
  if (predual.norm_tag != dual_norm_tag(fiber.norm_tag))
    throw ValidationError("predual norm tag must be conjugate to the fiber tag");
  return AlgebroidModel{std::move(name), base,   fiber,
                        predual,         std::move(anchor), std::move(structure)};
}

Vec anchor_apply(const AlgebroidModel& A, const Vec& m, const Vec& x) {
  if (m.space.role_tag != RoleTag::base) throw RoleError("anchor input m must be a base point");
  if (x.space.role_tag != RoleTag::fiber) throw RoleError("anchor input x must be a fiber vector");
  return make_vec(anchor_apply_g<double>(A.anchor, m.coords, x.coords), A.base);
}

Vec bracket_sections(const AlgebroidModel& A, const SectionFn& X,
                     const SectionFn& Y, const Vec& m) {
  if (m.space.role_tag != RoleTag::base) throw RoleError("bracket point must be a base point");
  return make_vec(bracket_sections_g<double>(A, X, Y, m.coords), A.fiber);
}

std::vector<double> ad_apply(const AlgebroidModel& A, const std::vector<double>& m,
                             const std::vector<double>& x,
                             const std::vector<double>& y) {
  if (m.size() != A.base.dim) throw DimensionError("point dimension mismatch");
  return structure_apply_g<double>(A.structure, m, x, y);
}

std::vector<double> ad_star(const AlgebroidModel& A, const std::vector<double>& m,
                            const std::vector<double>& x,
                            const std::vector<double>& phi) {
  const StructureField& C = A.structure;
  if (m.size() != A.base.dim) throw DimensionError("point dimension mismatch");
  if (x.size() != C.fiber_dim || phi.size() != C.fiber_dim)
    throw DimensionError("ad_star dimension mismatch");
  std::vector<double> out(C.fiber_dim, 0.0);
  if (C.kind == StructureField::Kind::zero) return out;
  static const std::vector<double> no_phi;
  std::size_t p = 0;
  for (std::size_t j = 0; j < C.fiber_dim; ++j) {
    for (std::size_t k = j + 1; k < C.fiber_dim; ++k, ++p) {
      double dot = 0.0;
      if (C.kind == StructureField::Kind::dense) {
        const std::vector<double>& col = C.dense_pairs[p];
        for (std::size_t i = 0; i < C.fiber_dim; ++i) dot += phi[i] * col[i];
      } else {
        const std::vector<ExprPtr>& col = C.expr_pairs[p];
        for (std::size_t i = 0; i < C.fiber_dim; ++i)
          dot += phi[i] * detail::eval_node<double>(*col[i], m, no_phi);
      }
      out[k] += x[j] * dot;
      out[j] -= x[k] * dot;
    }
  }
  return out;
}

namespace {

std::vector<Fwd<double>> seed_direction(const std::vector<double>& m,
                                        const std::vector<double>& v) {
  std::vector<Fwd<double>> mf;
  mf.reserve(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    mf.push_back(Fwd<double>(m[i], std::vector<double>{v[i]}));
  return mf;
}

std::vector<double> extract_slot(const std::vector<Fwd<double>>& w) {
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    out[i] = w[i].d.empty() ? 0.0 : w[i].d[0];
  return out;
}

double base_dir_deriv(const ExprNode& n, const std::vector<double>& m,
                      const std::vector<double>& v) {
  static const std::vector<Fwd<double>> no_phi;
  Fwd<double> r = detail::eval_node<Fwd<double>>(n, seed_direction(m, v), no_phi);
  return r.d.empty() ? 0.0 : r.d[0];
}

// Directional derivative of the base vector field m -> a_m(X(m)).
std::vector<double> anchored_field_dir_deriv(const AlgebroidModel& A,
                                             const SectionFn& X,
                                             const std::vector<double>& m,
                                             const std::vector<double>& v) {
  std::vector<Fwd<double>> mf = seed_direction(m, v);
  std::vector<Fwd<double>> xf = section_value(X, mf);
  return extract_slot(anchor_apply_g(A.anchor, mf, xf));
}

}  // namespace

std::vector<double> anchor_apply_dir_deriv(const AnchorField& a,
                                           const std::vector<double>& m,
                                           const std::vector<double>& v,
                                           const std::vector<double>& x) {
  std::vector<Fwd<double>> mf = seed_direction(m, v);
  std::vector<Fwd<double>> xf;
  xf.reserve(x.size());
  for (double c : x) xf.push_back(Fwd<double>(c));
  return extract_slot(anchor_apply_g(a, mf, xf));
}

double leibniz_check(const AlgebroidModel& A, const SectionFn& X,
                     const SectionFn& Y, const SmoothFn& f_base,
                     const std::vector<double>& m) {
  if (depends_on_fiber(*f_base.node))
    throw PreconditionError("Leibniz check needs a base-only function");
  if (f_base.base_dim != A.base.dim)
    throw DimensionError("function base dim does not match model");
  std::vector<ExprPtr> comps;
  comps.reserve(Y.components.size());
  for (const ExprPtr& c : Y.components)
    comps.push_back(expr_product({f_base.node, c}));
  SectionFn fY = make_section(Y.base_dim, std::move(comps));

  std::vector<double> lhs = bracket_sections_g<double>(A, X, fY, m);
  std::vector<double> xv = section_value(X, m);
  std::vector<double> yv = section_value(Y, m);
  std::vector<double> ax = anchor_apply_g(A.anchor, m, xv);
  const double df = base_dir_deriv(*f_base.node, m, ax);
  static const std::vector<double> no_phi;
  const double fm = detail::eval_node<double>(*f_base.node, m, no_phi);
  std::vector<double> br = bracket_sections_g<double>(A, X, Y, m);
  std::vector<double> res(lhs.size());
  for (std::size_t i = 0; i < res.size(); ++i)
    res[i] = lhs[i] - df * yv[i] - fm * br[i];
  return norm(res, A.fiber.norm_tag);
}

namespace {

// [[X,Y],Z](m): the inner bracket enters through its value and its
// derivative, the latter taken with a forward pass through the whole
// bracket formula.
std::vector<double> double_bracket(const AlgebroidModel& A, const SectionFn& X,
                                   const SectionFn& Y, const SectionFn& Z,
                                   const std::vector<double>& m) {
  std::vector<double> zv = section_value(Z, m);
  std::vector<double> az = anchor_apply_g(A.anchor, m, zv);
  std::vector<Fwd<double>> mf = seed_direction(m, az);
  std::vector<Fwd<double>> wf = bracket_sections_g<Fwd<double>>(A, X, Y, mf);
  std::vector<double> wv(wf.size());
  for (std::size_t i = 0; i < wf.size(); ++i) wv[i] = wf[i].v;
  std::vector<double> dw = extract_slot(wf);  // DW(m)[a(Z(m))]
  std::vector<double> aw = anchor_apply_g(A.anchor, m, wv);
  std::vector<double> dz = section_dir_deriv(Z, m, aw);
  std::vector<double> c = structure_apply_g(A.structure, m, wv, zv);
  std::vector<double> out(wv.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (dz[i] - dw[i]) + c[i];
  return out;
}

}  // namespace

double jacobi_check_sections(const AlgebroidModel& A, const SectionFn& X,
                             const SectionFn& Y, const SectionFn& Z,
                             const std::vector<double>& m) {
  std::vector<double> t1 = double_bracket(A, X, Y, Z, m);
  std::vector<double> t2 = double_bracket(A, Y, Z, X, m);
  std::vector<double> t3 = double_bracket(A, Z, X, Y, m);
  std::vector<double> res(t1.size());
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = t1[i] + t2[i] + t3[i];
  return norm(res, A.fiber.norm_tag);
}

double first_jet_dependence_check(const AlgebroidModel& A, const SectionFn& X,
                                  const SectionFn& Xp, const SectionFn& Y,
                                  const std::vector<double>& m) {
  SectionJet jx = section_jet(X, m);
  SectionJet jp = section_jet(Xp, m);
  double scale = 1.0;
  for (std::size_t j = 0; j < jx.value.size(); ++j) {
    scale = std::max(scale, std::abs(jx.value[j]));
    for (double d : jx.deriv[j]) scale = std::max(scale, std::abs(d));
  }
  for (std::size_t j = 0; j < jx.value.size(); ++j) {
    if (std::abs(jx.value[j] - jp.value[j]) > 1e-10 * scale)
      throw PreconditionError("sections do not share their value at m");
    for (std::size_t i = 0; i < jx.deriv[j].size(); ++i)
      if (std::abs(jx.deriv[j][i] - jp.deriv[j][i]) > 1e-10 * scale)
        throw PreconditionError("sections do not share their derivative at m");
  }
  std::vector<double> b1 = bracket_sections_g<double>(A, X, Y, m);
  std::vector<double> b2 = bracket_sections_g<double>(A, Xp, Y, m);
  std::vector<double> res(b1.size());
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = b1[i] - b2[i];
  return norm(res, A.fiber.norm_tag);
}

double anchor_morphism_residual(const AlgebroidModel& A, const SectionFn& X,
                                const SectionFn& Y, const std::vector<double>& m) {
  std::vector<double> w = bracket_sections_g<double>(A, X, Y, m);
  std::vector<double> lhs = anchor_apply_g(A.anchor, m, w);
  std::vector<double> xv = section_value(X, m);
  std::vector<double> yv = section_value(Y, m);
  std::vector<double> u = anchor_apply_g(A.anchor, m, xv);
  std::vector<double> v = anchor_apply_g(A.anchor, m, yv);
  std::vector<double> dv = anchored_field_dir_deriv(A, Y, m, u);
  std::vector<double> du = anchored_field_dir_deriv(A, X, m, v);
  std::vector<double> res(lhs.size());
  for (std::size_t i = 0; i < res.size(); ++i)
    res[i] = lhs[i] - (dv[i] - du[i]);
  return norm(res, A.base.norm_tag);
}

}  // namespace predual
