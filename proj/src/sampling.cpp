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

#include "predual/sampling.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "predual/errors.hpp"

namespace predual {

std::vector<double> sample_box(std::size_t n, double lo, double hi, Rng& rng) {
  std::vector<double> out(n);
  for (auto& c : out) c = rng.uniform(lo, hi);
  return out;
}

std::vector<double> sample_profile(NormTag tag, std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = rng.signed_uniform(0.2, 1.8);
    const double j = static_cast<double>(k + 1);
    switch (tag) {
      case NormTag::p1: out[k] = u / (j * j); break;
      case NormTag::p2: out[k] = u / j; break;
      case NormTag::pinf: out[k] = u; break;
    }
  }
  return out;
}

Vec sample_vec(const SpaceModel& space, Rng& rng) {
  return Vec{sample_profile(space.norm_tag, space.dim, rng), space};
}

BundlePoint sample_point(const AlgebroidModel& model, Rng& rng) {
  Vec m{sample_box(model.base.dim, -1.0, 1.0, rng), model.base};
  Vec phi = sample_vec(model.predual, rng);
  return make_point(m, phi);
}

namespace {

ExprPtr random_expr(std::size_t base_dim, std::size_t fiber_dim,
                    std::size_t depth, Rng& rng) {
  const bool leaf = depth == 0 || rng.below(4) == 0;
  if (leaf) {
    const std::uint64_t pick = rng.below(fiber_dim > 0 ? 3 : 2);
    if (pick == 0) return expr_constant(rng.uniform(-1.0, 1.0));
    if (pick == 1) return expr_base_coord(rng.below(base_dim));
    return expr_fiber_coord(rng.below(fiber_dim));
  }
  auto sub = [&] { return random_expr(base_dim, fiber_dim, depth - 1, rng); };
  auto scaled = [&](double s) {
    return expr_product({expr_constant(s * rng.uniform(0.5, 1.0)), sub()});
  };
  switch (rng.below(6)) {
    case 0: {
      std::vector<ExprPtr> args;
      const std::size_t n = 2 + rng.below(2);
      for (std::size_t i = 0; i < n; ++i) args.push_back(sub());
      return expr_sum(args);
    }
    case 1: return expr_product({sub(), sub()});
    case 2: return expr_prim(ExprOp::sin_prim, scaled(0.7));
    case 3: return expr_prim(ExprOp::cos_prim, scaled(0.7));
    case 4: return expr_prim(ExprOp::exp_prim, scaled(0.3));
    default: {
      std::vector<double> coeffs(1 + rng.below(3));
      for (auto& c : coeffs) c = rng.uniform(-0.8, 0.8);
      return expr_poly(coeffs, sub());
    }
  }
}

/// Linear form in m - m0 with nonzero coefficients on every coordinate.
ExprPtr linear_form_at(const std::vector<double>& m0, Rng& rng) {
  std::vector<ExprPtr> terms;
  terms.reserve(m0.size());
  for (std::size_t i = 0; i < m0.size(); ++i) {
    const ExprPtr diff =
        expr_sum({expr_base_coord(i), expr_constant(-m0[i])});
    terms.push_back(
        expr_product({expr_constant(rng.signed_uniform(0.2, 1.0)), diff}));
  }
  return expr_sum(terms);
}

SectionFn perturb_section(const SectionFn& x, const std::vector<double>& m0,
                          double eps, std::size_t order, Rng& rng) {
  if (m0.size() != x.base_dim) {
    throw DimensionError("perturbation point dimension mismatch");
  }
  std::vector<ExprPtr> comps;
  comps.reserve(x.components.size());
  for (const auto& comp : x.components) {
    ExprPtr bump = linear_form_at(m0, rng);
    if (order == 2) bump = expr_product({bump, linear_form_at(m0, rng)});
    comps.push_back(
        expr_sum({comp, expr_product({expr_constant(eps), bump})}));
  }
  return make_section(x.base_dim, std::move(comps));
}

}  // namespace

ExprPtr random_base_expr(std::size_t base_dim, std::size_t depth, Rng& rng) {
  return random_expr(base_dim, 0, depth, rng);
}

SmoothFn random_fn(std::size_t base_dim, std::size_t fiber_dim,
                   std::size_t depth, Rng& rng) {
  std::vector<ExprPtr> parts;
  const std::size_t n = 2 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(random_expr(base_dim, fiber_dim,
                                depth > 0 ? depth - 1 : 0, rng));
  }
  return make_fn(expr_sum(parts), base_dim, fiber_dim);
}

SectionFn random_polynomial_section(std::size_t base_dim,
                                    std::size_t fiber_dim, std::size_t degree,
                                    Rng& rng) {
  std::vector<ExprPtr> comps;
  comps.reserve(fiber_dim);
  for (std::size_t j = 0; j < fiber_dim; ++j) {
    std::vector<ExprPtr> terms;
    const std::size_t n_terms = 1 + rng.below(3);
    for (std::size_t t = 0; t < n_terms; ++t) {
      std::vector<ExprPtr> factors;
      factors.push_back(expr_constant(rng.signed_uniform(0.2, 1.0)));
      const std::size_t deg = rng.below(degree + 1);
      for (std::size_t d = 0; d < deg; ++d) {
        factors.push_back(expr_base_coord(rng.below(base_dim)));
      }
      terms.push_back(factors.size() == 1 ? factors[0]
                                          : expr_product(factors));
    }
    comps.push_back(terms.size() == 1 ? terms[0] : expr_sum(terms));
  }
  return make_section(base_dim, std::move(comps));
}

SmoothFn random_flat_fn(std::size_t base_dim, std::size_t fiber_dim,
                        Rng& rng) {
  std::vector<ExprPtr> terms;
  for (std::size_t i = 0; i < base_dim; ++i) {
    const double j = static_cast<double>(i + 1);
    const double a = rng.signed_uniform(0.8, 1.2) / (j * j * j * j);
    ExprPtr arg = expr_base_coord(i);
    if (i > 0) {
      const std::size_t partner = rng.below(i);
      const double b = rng.signed_uniform(0.0, 0.2);
      arg = expr_sum(
          {arg, expr_product({expr_constant(b), expr_base_coord(partner)})});
    }
    terms.push_back(
        expr_product({expr_constant(a), expr_prim(ExprOp::sin_prim, arg)}));
  }
  for (std::size_t k = 0; k < fiber_dim; ++k) {
    const double j = static_cast<double>(k + 1);
    const double d = rng.signed_uniform(0.2, 1.0) / (j * j);
    terms.push_back(
        expr_product({expr_constant(d), expr_fiber_coord(k)}));
  }
  return make_fn(expr_sum(terms), base_dim, fiber_dim);
}

SectionFn perturb_section_first_order(const SectionFn& x,
                                      const std::vector<double>& m0,
                                      double eps, Rng& rng) {
  return perturb_section(x, m0, eps, 1, rng);
}

SectionFn perturb_section_second_order(const SectionFn& x,
                                       const std::vector<double>& m0,
                                       double eps, Rng& rng) {
  return perturb_section(x, m0, eps, 2, rng);
}

}  // namespace predual
