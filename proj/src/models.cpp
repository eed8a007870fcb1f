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

#include "predual/models.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>

#include "predual/errors.hpp"

namespace predual {

namespace {

SpaceModel space(std::size_t dim, NormTag tag, RoleTag role) {
  return SpaceModel{dim, tag, role};
}

std::vector<std::vector<std::vector<double>>> zero_tensor(std::size_t n) {
  return std::vector<std::vector<std::vector<double>>>(
      n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
}

}  // namespace

AlgebroidModel make_lie_poisson(
    std::string name,
    const std::vector<std::vector<std::vector<double>>>& c) {
  const std::size_t nf = c.size();
  return make_algebroid(std::move(name), space(1, NormTag::p2, RoleTag::base),
                        space(nf, NormTag::p2, RoleTag::fiber),
                        space(nf, NormTag::p2, RoleTag::predual_fiber),
                        make_anchor_zero(1, nf), make_structure_from_full(c));
}

AlgebroidModel make_so3() {
  auto c = zero_tensor(3);
  c[2][0][1] = 1.0;
  c[2][1][0] = -1.0;
  c[0][1][2] = 1.0;
  c[0][2][1] = -1.0;
  c[1][2][0] = 1.0;
  c[1][0][2] = -1.0;
  return make_lie_poisson("so3", c);
}

AlgebroidModel make_sl2() {
  auto c = zero_tensor(3);
  c[1][0][1] = 2.0;   // [h, e] = 2e
  c[1][1][0] = -2.0;
  c[2][0][2] = -2.0;  // [h, f] = -2f
  c[2][2][0] = 2.0;
  c[0][1][2] = 1.0;   // [e, f] = h
  c[0][2][1] = -1.0;
  return make_lie_poisson("sl2", c);
}

AlgebroidModel make_precotangent(std::size_t n) {
  if (n == 0) throw ValidationError("precotangent needs a positive dimension");
  return make_algebroid("precotangent:" + std::to_string(n),
                        space(n, NormTag::p2, RoleTag::base),
                        space(n, NormTag::p2, RoleTag::fiber),
                        space(n, NormTag::p2, RoleTag::predual_fiber),
                        make_anchor_identity(n), make_structure_zero(n));
}

ModelFamily precotangent_family() {
  ModelFamily family;
  family.name = "precotangent";
  family.instantiate = [](std::size_t n) { return make_precotangent(n); };
  family.mu_profile = NormTag::pinf;
  return family;
}

std::vector<double> sequence_weights(const SequenceWeights& w, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double j = static_cast<double>(k + 1);
    switch (w.kind) {
      case SequenceWeights::Kind::harmonic: out[k] = 1.0 / j; break;
      case SequenceWeights::Kind::unit: out[k] = 1.0; break;
      case SequenceWeights::Kind::power: out[k] = std::pow(j, -w.exponent);
        break;
    }
  }
  return out;
}

namespace {

std::string weights_suffix(const SequenceWeights& w) {
  switch (w.kind) {
    case SequenceWeights::Kind::harmonic: return "";
    case SequenceWeights::Kind::unit: return ":weights=unit";
    case SequenceWeights::Kind::power: {
      std::ostringstream os;
      os << ":weights=power:" << w.exponent;
      return os.str();
    }
  }
  return "";
}

}  // namespace

AlgebroidModel make_sequence_triple(std::size_t n, const SequenceWeights& w) {
  if (n == 0) throw ValidationError("seqtriple needs a positive dimension");
  return make_algebroid("seqtriple:" + std::to_string(n) + weights_suffix(w),
                        space(n, NormTag::p2, RoleTag::base),
                        space(n, NormTag::pinf, RoleTag::fiber),
                        space(n, NormTag::p1, RoleTag::predual_fiber),
                        make_anchor_diagonal(sequence_weights(w, n)),
                        make_structure_zero(n));
}

ModelFamily sequence_triple_family(const SequenceWeights& w) {
  ModelFamily family;
  family.name = "seqtriple" + weights_suffix(w);
  family.instantiate = [w](std::size_t n) {
    return make_sequence_triple(n, w);
  };
  return family;
}

AlgebroidModel make_so3_action() {
  const auto m = [](std::size_t k) { return expr_base_coord(k); };
  const auto neg = [](ExprPtr e) {
    return expr_product({expr_constant(-1.0), std::move(e)});
  };
  const ExprPtr zero = expr_constant(0.0);
  // Column j is e_j cross m.
  std::vector<std::vector<ExprPtr>> entries = {
      {zero, m(2), neg(m(1))},
      {neg(m(2)), zero, m(0)},
      {m(1), neg(m(0)), zero},
  };
  // C(e_j, e_k) = e_k cross e_j for the pairs (0,1), (0,2), (1,2).
  std::vector<std::vector<double>> pairs = {
      {0.0, 0.0, -1.0}, {0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}};
  return make_algebroid("so3-action", space(3, NormTag::p2, RoleTag::base),
                        space(3, NormTag::p2, RoleTag::fiber),
                        space(3, NormTag::p2, RoleTag::predual_fiber),
                        make_anchor_expr(3, std::move(entries)),
                        make_structure_pairs(3, std::move(pairs)));
}

namespace {

std::vector<std::string> split_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::size_t parse_dim(const std::string& token) {
  if (token.empty()) throw ValidationError("empty dimension token");
  std::size_t pos = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(token, &pos);
  } catch (const std::exception&) {
    throw ValidationError("bad dimension token: " + token);
  }
  if (pos != token.size() || n == 0)
    throw ValidationError("bad dimension token: " + token);
  return static_cast<std::size_t>(n);
}

double parse_exponent(const std::string& token) {
  std::size_t pos = 0;
  double p = 0.0;
  try {
    p = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ValidationError("bad weights exponent: " + token);
  }
  if (pos != token.size())
    throw ValidationError("bad weights exponent: " + token);
  return p;
}

}  // namespace

Preset parse_preset(const std::string& spec) {
  const std::vector<std::string> tokens = split_tokens(spec);
  const std::string& head = tokens.front();
  if (head == "so3" || head == "sl2" || head == "so3-action") {
    if (tokens.size() != 1)
      throw ValidationError("preset " + head + " takes no arguments");
    if (head == "so3") return Preset{make_so3(), std::nullopt};
    if (head == "sl2") return Preset{make_sl2(), std::nullopt};
    return Preset{make_so3_action(), std::nullopt};
  }
  if (head == "precotangent") {
    std::size_t n = 16;
    if (tokens.size() > 2)
      throw ValidationError("precotangent takes at most one argument");
    if (tokens.size() == 2) n = parse_dim(tokens[1]);
    return Preset{make_precotangent(n), precotangent_family()};
  }
  if (head == "seqtriple") {
    std::size_t n = 32;
    SequenceWeights w;
    std::size_t i = 1;
    if (i < tokens.size() && tokens[i].rfind("weights=", 0) != 0) {
      n = parse_dim(tokens[i]);
      ++i;
    }
    if (i < tokens.size()) {
      const std::string& tok = tokens[i];
      if (tok.rfind("weights=", 0) != 0)
        throw ValidationError("unexpected preset token: " + tok);
      const std::string kind = tok.substr(8);
      ++i;
      if (kind == "harmonic") {
        w.kind = SequenceWeights::Kind::harmonic;
      } else if (kind == "unit") {
        w.kind = SequenceWeights::Kind::unit;
      } else if (kind == "power") {
        if (i >= tokens.size())
          throw ValidationError("weights=power needs an exponent");
        w.kind = SequenceWeights::Kind::power;
        w.exponent = parse_exponent(tokens[i]);
        ++i;
      } else {
        throw ValidationError("unknown weights kind: " + kind);
      }
    }
    if (i != tokens.size())
      throw ValidationError("unexpected preset tokens after " + tokens[i - 1]);
    return Preset{make_sequence_triple(n, w), sequence_triple_family(w)};
  }
  throw ValidationError("unknown model preset: " + spec);
}

}  // namespace predual
