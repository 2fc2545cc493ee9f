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

#include "miaudit/mech.hpp"
#include "miaudit/score.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

namespace miaudit {

/// s(o; z): score of a released output against a target.
using Scorer = std::function<double(const Vector& output, const Vector& target)>;

/// Everything an adversary may know, depending on the attack.
struct ScoreSideInfo {
  Index n = 0;
  Mechanism mech;
  std::optional<OracleMoments> oracle;
  std::optional<Vector> z_ref;    // scalar_product
  std::optional<Vector> z_targ;   // lr_misspecified
  std::shared_ptr<const ReferenceEstimates> refs;  // lr_empirical_cov
};

/// "lr_exact_bernoulli", "lr_asymptotic", "lr_empirical_cov", "scalar_product",
/// "lr_noisy", "lr_subsampled", "lr_misspecified".
std::span<const std::string_view> score_names();

/// Binds a named score to its side information. Throws ConfigError for an
/// unknown name (listing valid ones) or missing side information.
Scorer make_scorer(std::string_view name, const ScoreSideInfo& info);

}  // namespace miaudit
