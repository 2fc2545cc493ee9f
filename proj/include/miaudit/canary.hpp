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

#include "miaudit/score.hpp"

#include <optional>
#include <vector>

namespace miaudit {

struct ReferenceOptions {
  CovarianceMode mode = CovarianceMode::Full;
  /// Subtract mu0 mu0^T from the second moment. Off by default: C0 is the raw
  /// second moment (1/n0) sum g g^T.
  bool centered = false;
  std::optional<double> ridge;  // nullopt: 1e-6 * trace(C0) / d
};

/// mu0 and C0 from reference vectors, one per row (n0 x d, n0 >= 2).
ReferenceEstimates estimate_reference(const MatrixRef& refs, const ReferenceOptions& opts = {});

/// |x - mu0|^2 under C0^{-1}.
inline double mahalanobis_score_est(const VectorRef& x, const ReferenceEstimates& refs) {
  return refs.mahalanobis2(x);
}

struct CanaryScore {
  Index index;
  double score;
};

/// Highest estimated Mahalanobis score among candidate rows; ties go to the
/// lowest index.
CanaryScore select_canary(const MatrixRef& candidates, const ReferenceEstimates& refs);

/// All candidates ordered by descending score (stable on ties).
std::vector<CanaryScore> rank_canaries(const MatrixRef& candidates, const ReferenceEstimates& refs);

}  // namespace miaudit
