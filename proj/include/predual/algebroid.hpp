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
#include <string>
#include <vector>

#include "predual/errors.hpp"
#include "predual/forward.hpp"
#include "predual/funcalg.hpp"
#include "predual/spaces.hpp"

namespace predual {

/// Anchor field m -> linear map from fiber to base. Constant kinds store
/// numbers; the expr kind stores base-only expressions per entry.
struct AnchorField {
  enum class Kind { zero, diagonal, dense, expr };
  Kind kind = Kind::zero;
  std::size_t base_dim = 0;
  std::size_t fiber_dim = 0;
  std::vector<double> diag;                    // diagonal: square, weights
  std::vector<std::vector<double>> dense;      // base_dim rows of fiber_dim
  std::vector<std::vector<ExprPtr>> entries;   // expr: same layout as dense
};

AnchorField make_anchor_zero(std::size_t base_dim, std::size_t fiber_dim);
AnchorField make_anchor_identity(std::size_t dim);
AnchorField make_anchor_diagonal(std::vector<double> weights);
AnchorField make_anchor_dense(std::vector<std::vector<double>> matrix);
AnchorField make_anchor_expr(std::size_t base_dim,
                             std::vector<std::vector<ExprPtr>> entries);

/// Skew bilinear structure field m -> C_m on the fiber. Stored per index pair
/// j < k as the coefficient vector of C_m(e_j, e_k), so skewness is built in
/// and contractions are exactly antisymmetric.
struct StructureField {
  enum class Kind { zero, dense, expr };
  Kind kind = Kind::zero;
  std::size_t fiber_dim = 0;
  std::vector<std::vector<double>> dense_pairs;       // [pair][i]
  std::vector<std::vector<ExprPtr>> expr_pairs;       // [pair][i], base-only
};

/// Position of the (j,k) pair, j < k, in the flattened pair table.
std::size_t pair_index(std::size_t j, std::size_t k, std::size_t fiber_dim);

StructureField make_structure_zero(std::size_t fiber_dim);
/// From a full 3-index array c[i][j][k] with C(e_j,e_k) = sum_i c[i][j][k] e_i;
/// requires exact skewness c[i][j][k] == -c[i][k][j].
StructureField make_structure_from_full(
    const std::vector<std::vector<std::vector<double>>>& c);
StructureField make_structure_pairs(std::size_t fiber_dim,
                                    std::vector<std::vector<double>> pairs);
StructureField make_structure_expr(std::size_t fiber_dim, std::size_t base_dim,
                                   std::vector<std::vector<ExprPtr>> pairs);

/// Tensor entry C_m(e_j, e_k)_i, reading the pair table with sign.
double structure_entry(const StructureField& C, const std::vector<double>& m,
                       std::size_t i, std::size_t j, std::size_t k);

/// Local data of a Banach Lie algebroid on a trivial bundle over one chart.
struct AlgebroidModel {
  std::string name;
  SpaceModel base;
  SpaceModel fiber;
  SpaceModel predual;
  AnchorField anchor;
  StructureField structure;
};

/// Builds the model and checks dimension and tag consistency.
AlgebroidModel make_algebroid(std::string name, SpaceModel base, SpaceModel fiber,
                              SpaceModel predual, AnchorField anchor,
                              StructureField structure);

template <typename S>
std::vector<S> anchor_apply_g(const AnchorField& a, const std::vector<S>& m,
                              const std::vector<S>& x) {
  if (m.size() != a.base_dim || x.size() != a.fiber_dim)
    throw DimensionError("anchor application dimension mismatch");
  std::vector<S> out(a.base_dim, lift<S>(0.0));
  switch (a.kind) {
    case AnchorField::Kind::zero:
      break;
    case AnchorField::Kind::diagonal:
      for (std::size_t k = 0; k < a.diag.size(); ++k)
        out[k] = lift<S>(a.diag[k]) * x[k];
      break;
    case AnchorField::Kind::dense:
      for (std::size_t i = 0; i < a.base_dim; ++i) {
        S acc = lift<S>(0.0);
        for (std::size_t j = 0; j < a.fiber_dim; ++j)
          if (a.dense[i][j] != 0.0) acc = acc + lift<S>(a.dense[i][j]) * x[j];
        out[i] = acc;
      }
      break;
    case AnchorField::Kind::expr: {
      static const std::vector<S> no_phi;
      for (std::size_t i = 0; i < a.base_dim; ++i) {
        S acc = lift<S>(0.0);
        for (std::size_t j = 0; j < a.fiber_dim; ++j)
          acc = acc + detail::eval_node<S>(*a.entries[i][j], m, no_phi) * x[j];
        out[i] = acc;
      }
      break;
    }
  }
  return out;
}

/// Transpose action on base covectors: (a_m* mu)_j = sum_i mu_i (a_m)_{ij}.
template <typename S>
std::vector<S> anchor_transpose_apply_g(const AnchorField& a,
                                        const std::vector<S>& m,
                                        const std::vector<S>& mu) {
  if (m.size() != a.base_dim || mu.size() != a.base_dim)
    throw DimensionError("anchor transpose dimension mismatch");
  std::vector<S> out(a.fiber_dim, lift<S>(0.0));
  switch (a.kind) {
    case AnchorField::Kind::zero:
      break;
    case AnchorField::Kind::diagonal:
      for (std::size_t k = 0; k < a.diag.size(); ++k)
        out[k] = lift<S>(a.diag[k]) * mu[k];
      break;
    case AnchorField::Kind::dense:
      for (std::size_t j = 0; j < a.fiber_dim; ++j) {
        S acc = lift<S>(0.0);
        for (std::size_t i = 0; i < a.base_dim; ++i)
          if (a.dense[i][j] != 0.0) acc = acc + lift<S>(a.dense[i][j]) * mu[i];
        out[j] = acc;
      }
      break;
    case AnchorField::Kind::expr: {
      static const std::vector<S> no_phi;
      for (std::size_t j = 0; j < a.fiber_dim; ++j) {
        S acc = lift<S>(0.0);
        for (std::size_t i = 0; i < a.base_dim; ++i)
          acc = acc + detail::eval_node<S>(*a.entries[i][j], m, no_phi) * mu[i];
        out[j] = acc;
      }
      break;
    }
  }
  return out;
}

/// C_m(x, y), accumulated over index pairs j < k with the factor
/// (x_j y_k - x_k y_j) so that swapping x and y negates every term exactly.
template <typename S>
std::vector<S> structure_apply_g(const StructureField& C,
                                 const std::vector<S>& m,
                                 const std::vector<S>& x,
                                 const std::vector<S>& y) {
  if (x.size() != C.fiber_dim || y.size() != C.fiber_dim)
    throw DimensionError("structure field dimension mismatch");
  std::vector<S> out(C.fiber_dim, lift<S>(0.0));
  if (C.kind == StructureField::Kind::zero) return out;
  static const std::vector<S> no_phi;
  std::size_t p = 0;
  for (std::size_t j = 0; j < C.fiber_dim; ++j) {
    for (std::size_t k = j + 1; k < C.fiber_dim; ++k, ++p) {
      S w = x[j] * y[k] - x[k] * y[j];
      if (C.kind == StructureField::Kind::dense) {
        const std::vector<double>& col = C.dense_pairs[p];
        for (std::size_t i = 0; i < C.fiber_dim; ++i)
          if (col[i] != 0.0) out[i] = out[i] + w * lift<S>(col[i]);
      } else {
        const std::vector<ExprPtr>& col = C.expr_pairs[p];
        for (std::size_t i = 0; i < C.fiber_dim; ++i)
          out[i] = out[i] + w * detail::eval_node<S>(*col[i], m, no_phi);
      }
    }
  }
  return out;
}

/// Local bracket of sections at m:
/// DY(m)[a(X(m))] - DX(m)[a(Y(m))] + C_m(X(m), Y(m)).
template <typename S>
std::vector<S> bracket_sections_g(const AlgebroidModel& A, const SectionFn& X,
                                  const SectionFn& Y, const std::vector<S>& m) {
  if (m.size() != A.base.dim)
    throw DimensionError("point dimension does not match model base");
  if (X.base_dim != A.base.dim || Y.base_dim != A.base.dim ||
      X.components.size() != A.fiber.dim || Y.components.size() != A.fiber.dim)
    throw DimensionError("section dimensions do not match model");
  std::vector<S> xv = section_value(X, m);
  std::vector<S> yv = section_value(Y, m);
  std::vector<S> ax = anchor_apply_g(A.anchor, m, xv);
  std::vector<S> ay = anchor_apply_g(A.anchor, m, yv);
  std::vector<S> dy = section_dir_deriv(Y, m, ax);
  std::vector<S> dx = section_dir_deriv(X, m, ay);
  std::vector<S> c = structure_apply_g(A.structure, m, xv, yv);
  std::vector<S> out(A.fiber.dim, lift<S>(0.0));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (dy[i] - dx[i]) + c[i];
  return out;
}

Vec anchor_apply(const AlgebroidModel& A, const Vec& m, const Vec& x);
Vec bracket_sections(const AlgebroidModel& A, const SectionFn& X,
                     const SectionFn& Y, const Vec& m);

/// ad^m_x applied to y, that is C_m(x, y).
std::vector<double> ad_apply(const AlgebroidModel& A, const std::vector<double>& m,
                             const std::vector<double>& x,
                             const std::vector<double>& y);

/// Transpose of ad^m_x on the dual slot: pair(ad(x)(y), phi) == pair(y, ad_star(x, phi)).
std::vector<double> ad_star(const AlgebroidModel& A, const std::vector<double>& m,
                            const std::vector<double>& x,
                            const std::vector<double>& phi);

/// Directional derivative of m -> a_m(x) in base direction v, exact.
std::vector<double> anchor_apply_dir_deriv(const AnchorField& a,
                                           const std::vector<double>& m,
                                           const std::vector<double>& v,
                                           const std::vector<double>& x);

/// Residual of [X, fY] - (a(X)f) Y - f [X,Y] at m, in the fiber norm.
double leibniz_check(const AlgebroidModel& A, const SectionFn& X,
                     const SectionFn& Y, const SmoothFn& f_base,
                     const std::vector<double>& m);

/// Norm of the cyclic sum [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] at m.
double jacobi_check_sections(const AlgebroidModel& A, const SectionFn& X,
                             const SectionFn& Y, const SectionFn& Z,
                             const std::vector<double>& m);

/// Norm of [X,Y](m) - [X',Y](m) for X, X' sharing value and derivative at m.
double first_jet_dependence_check(const AlgebroidModel& A, const SectionFn& X,
                                  const SectionFn& Xp, const SectionFn& Y,
                                  const std::vector<double>& m);

/// Residual of a([X,Y]) - [a(X), a(Y)] at m, vector-field bracket on the base.
double anchor_morphism_residual(const AlgebroidModel& A, const SectionFn& X,
                                const SectionFn& Y, const std::vector<double>& m);

}  // namespace predual
