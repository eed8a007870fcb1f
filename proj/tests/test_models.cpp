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
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "predual/algebroid.hpp"
#include "predual/errors.hpp"
#include "predual/models.hpp"
#include "predual/rng.hpp"
#include "predual/sampling.hpp"

using namespace predual;

TEST_CASE("so3 structure tensor matches the cross product table") {
  const AlgebroidModel so3 = make_so3();
  const auto c = oracle::so3_tensor();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        CHECK(structure_entry(so3.structure, {0.0}, i, j, k) == c[i][j][k]);
}

TEST_CASE("sl2 structure tensor matches the (h, e, f) table") {
  const AlgebroidModel sl2 = make_sl2();
  const auto c = oracle::sl2_tensor();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        CHECK(structure_entry(sl2.structure, {0.0}, i, j, k) == c[i][j][k]);
}

TEST_CASE("lie poisson presets have a point base and zero anchor") {
  for (const AlgebroidModel& model : {make_so3(), make_sl2()}) {
    CHECK(model.base.dim == 1);
    CHECK(model.fiber.dim == 3);
    CHECK(model.predual.dim == 3);
    const auto ax = anchor_apply_g(model.anchor, std::vector<double>{0.0},
                                   std::vector<double>{1.0, 2.0, 3.0});
    CHECK(ax == std::vector<double>{0.0});
  }
}

TEST_CASE("precotangent is the identity-anchor tangent model") {
  const AlgebroidModel model = make_precotangent(5);
  CHECK(model.name == "precotangent:5");
  CHECK(model.base.dim == 5);
  CHECK(model.fiber.dim == 5);
  CHECK(model.predual.dim == 5);
  CHECK(model.base.norm_tag == NormTag::p2);
  CHECK(model.fiber.norm_tag == NormTag::p2);
  CHECK(model.predual.norm_tag == NormTag::p2);
  const std::vector<double> m = {0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<double> x = {5.0, -4.0, 3.0, -2.0, 1.0};
  CHECK(anchor_apply_g(model.anchor, m, x) == x);
  Rng rng(81);
  for (int rep = 0; rep < 5; ++rep) {
    const Vec mm = sample_vec(model.base, rng);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t k = 0; k < 5; ++k)
          CHECK(structure_entry(model.structure, mm.coords, i, j, k) == 0.0);
  }
}

TEST_CASE("sequence weights produce the advertised diagonals") {
  const auto harmonic = sequence_weights({}, 4);
  CHECK(harmonic == std::vector<double>{1.0, 0.5, 1.0 / 3.0, 0.25});
  SequenceWeights unit;
  unit.kind = SequenceWeights::Kind::unit;
  CHECK(sequence_weights(unit, 3) == std::vector<double>{1.0, 1.0, 1.0});
  SequenceWeights pow_half;
  pow_half.kind = SequenceWeights::Kind::power;
  pow_half.exponent = 0.5;
  const auto w = sequence_weights(pow_half, 4);
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(w[k] == doctest::Approx(std::pow(double(k + 1), -0.5))
                      .epsilon(1e-15));
}

TEST_CASE("sequence triple carries the l2 linf l1 tags and diagonal anchor") {
  const AlgebroidModel model = make_sequence_triple(4);
  CHECK(model.name == "seqtriple:4");
  CHECK(model.base.norm_tag == NormTag::p2);
  CHECK(model.fiber.norm_tag == NormTag::pinf);
  CHECK(model.predual.norm_tag == NormTag::p1);
  CHECK(model.base.role_tag == RoleTag::base);
  CHECK(model.fiber.role_tag == RoleTag::fiber);
  CHECK(model.predual.role_tag == RoleTag::predual_fiber);
  const std::vector<double> m = {0.0, 0.0, 0.0, 0.0};
  const std::vector<double> x = {1.0, 1.0, 1.0, 1.0};
  const auto ax = anchor_apply_g(model.anchor, m, x);
  CHECK(ax == std::vector<double>{1.0, 0.5, 1.0 / 3.0, 0.25});
}

TEST_CASE("so3 action anchor is the cross product with the base point") {
  const AlgebroidModel model = make_so3_action();
  CHECK(model.name == "so3-action");
  const std::vector<double> m = {0.4, -1.1, 0.7};
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<double> ej(3, 0.0);
    ej[j] = 1.0;
    const auto got = anchor_apply_g(model.anchor, m, ej);
    const auto want = oracle::cross3({ej[0], ej[1], ej[2]}, {m[0], m[1], m[2]});
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-15));
  }
}

TEST_CASE("so3 action structure field is the reversed cross product") {
  const AlgebroidModel model = make_so3_action();
  Rng rng(82);
  for (int rep = 0; rep < 10; ++rep) {
    const Vec m = sample_vec(model.base, rng);
    const Vec x = sample_vec(model.fiber, rng);
    const Vec y = sample_vec(model.fiber, rng);
    const auto got = structure_apply_g(
        model.structure, m.coords, x.coords, y.coords);
    const auto want = oracle::cross3({y.coords[0], y.coords[1], y.coords[2]},
                                     {x.coords[0], x.coords[1], x.coords[2]});
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
  }
}

TEST_CASE("preset grammar resolves names dims and weights") {
  CHECK(parse_preset("so3").model.name == "so3");
  CHECK(!parse_preset("so3").family.has_value());
  CHECK(parse_preset("sl2").model.name == "sl2");
  CHECK(parse_preset("so3-action").model.name == "so3-action");

  const Preset pc = parse_preset("precotangent");
  CHECK(pc.model.name == "precotangent:16");
  CHECK(pc.model.base.dim == 16);
  CHECK(pc.family.has_value());

  const Preset pc8 = parse_preset("precotangent:8");
  CHECK(pc8.model.base.dim == 8);

  const Preset st = parse_preset("seqtriple");
  CHECK(st.model.name == "seqtriple:32");
  CHECK(st.model.base.dim == 32);
  CHECK(st.family.has_value());

  CHECK(parse_preset("seqtriple:16").model.base.dim == 16);

  const Preset unit = parse_preset("seqtriple:8:weights=unit");
  const auto au = anchor_apply_g(unit.model.anchor,
                                 std::vector<double>(8, 0.0),
                                 std::vector<double>(8, 1.0));
  CHECK(au == std::vector<double>(8, 1.0));

  const Preset pw = parse_preset("seqtriple:4:weights=power:0.5");
  const auto ap = anchor_apply_g(pw.model.anchor, std::vector<double>(4, 0.0),
                                 std::vector<double>(4, 1.0));
  for (std::size_t k = 0; k < 4; ++k)
    CHECK(ap[k] == doctest::Approx(std::pow(double(k + 1), -0.5))
                       .epsilon(1e-15));
}

TEST_CASE("preset grammar rejects malformed specs") {
  CHECK_THROWS_AS((void)parse_preset("su5"), ValidationError);
  CHECK_THROWS_AS((void)parse_preset(""), ValidationError);
  CHECK_THROWS_AS((void)parse_preset("seqtriple:0"), ValidationError);
  CHECK_THROWS_AS((void)parse_preset("seqtriple:abc"), ValidationError);
  CHECK_THROWS_AS((void)parse_preset("seqtriple:8:weights=cubic"),
                  ValidationError);
  CHECK_THROWS_AS((void)parse_preset("seqtriple:8:weights=power:x"),
                  ValidationError);
  CHECK_THROWS_AS((void)parse_preset("precotangent:8:weights=unit"),
                  ValidationError);
  CHECK_THROWS_AS((void)parse_preset("so3:3"), ValidationError);
}

TEST_CASE("family truncations agree with direct construction") {
  const ModelFamily fam = sequence_triple_family();
  const AlgebroidModel at8 = fam.instantiate(8);
  CHECK(at8.base.dim == 8);
  CHECK(at8.name == "seqtriple:8");
  const ModelFamily pre = precotangent_family();
  const AlgebroidModel pt4 = pre.instantiate(4);
  CHECK(pt4.base.dim == 4);
  CHECK(pt4.name == "precotangent:4");
}
