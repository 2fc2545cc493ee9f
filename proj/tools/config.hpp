// Copyright 2026 The mi-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "miaudit/canary.hpp"
#include "miaudit/dist.hpp"
#include "miaudit/game.hpp"
#include "miaudit/mech.hpp"
#include "miaudit/scorers.hpp"
#include "miaudit/whitebox.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace miaudit::cli {

using json = nlohmann::json;

/// j[key], or ConfigError naming the key.
const json& need(const json& j, std::string_view key);
double need_number(const json& j, std::string_view key);
Index need_count(const json& j, std::string_view key);
double number_or(const json& j, std::string_view key, double fallback);
Index count_or(const json& j, std::string_view key, Index fallback);
std::uint64_t seed_or(const json& j, std::string_view key, std::uint64_t fallback);
std::string string_or(const json& j, std::string_view key, std::string fallback);

/// {"columns":[{"law":"bernoulli","p":..},{"law":"gaussian","mean":..,"var":..}]}
/// or {"law":"bernoulli_uniform","d":..,"a":..,"seed":..}.
ProductDistribution parse_dist(const json& j);

/// Reads "mechanism" (a name, with "gamma_scalar" | "gamma" | "rho" beside
/// it, or an object holding all of them).
Mechanism parse_mechanism(const json& config, Index d);

/// "easy" | "hard" | "medium" (a draw from dist keyed by `seed`), an explicit
/// array, or {"kind": ..., "seed": ...}.
Vector parse_point(const json& spec, const ProductDistribution& dist, std::uint64_t seed);

/// The adversary's side information for `score`, read from config["side_info"].
ScoreSideInfo parse_side_info(const json& config, std::string_view score,
                              const ProductDistribution& dist, const Mechanism& mech, Index n);

ReferenceOptions parse_reference_options(const json& j);

/// Canonical dump hashed with FNV-1a; used to tag every output.
std::string config_hash(const json& config);

}  // namespace miaudit::cli
