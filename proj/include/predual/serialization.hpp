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

#include <string>

#include "json.hpp"
#include "predual/algebroid.hpp"
#include "predual/funcalg.hpp"
#include "predual/spaces.hpp"

namespace predual {

using Json = nlohmann::json;

/// Expression trees as {"op": ..., "args": [...]} with op-specific fields
/// ("value" for constants, "index" for coordinates, "coeffs" for poly).
Json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const Json& j);

/// Sections as arrays of component expression trees.
Json section_to_json(const SectionFn& x);
SectionFn section_from_json(const Json& j, std::size_t base_dim);

/// Functions as {"base_dim", "fiber_dim", "tree"}.
Json fn_to_json(const SmoothFn& f);
SmoothFn fn_from_json(const Json& j);

Json space_to_json(const SpaceModel& s);
SpaceModel space_from_json(const Json& j);

/// Models with the anchor as a constant matrix or matrix-valued expression
/// and the structure field as a full 3-index tensor (or expression pairs);
/// skewness is validated on load.
Json model_to_json(const AlgebroidModel& model);
AlgebroidModel model_from_json(const Json& j);

/// Stable dump used for hashing and byte-compare tests.
std::string model_canonical_string(const AlgebroidModel& model);

Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);
AlgebroidModel load_model_file(const std::string& path);
SmoothFn load_fn_file(const std::string& path);

}  // namespace predual
