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

#include "miaudit/common.hpp"

#include <span>
#include <vector>

namespace miaudit {

/// One game round reduced to the adversary's score and the secret bit.
/// Scores may be +-infinity.
struct ScoredRound {
  double score;
  bool member;
};

struct RocPoint {
  double fpr;
  double tpr;
};

/// Staircase ROC from (0,0) to (1,1), one vertex per distinct score.
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// Threshold sweep over the distinct scores (guess "member" iff score > tau).
/// Throws ConfigError unless both classes are present.
RocCurve roc(std::span<const ScoredRound> rounds);

/// 2 * accuracy - 1 of the guess 1{score > threshold}.
double empirical_advantage(std::span<const ScoredRound> rounds, double threshold);

struct BestAdvantage {
  double advantage;
  double threshold;
};

/// Largest empirical advantage over all thresholds. With `two_sided` the
/// reversed decision 1{score <= tau} is allowed too, so the result is a
/// total-variation-style |TPR - FPR|.
BestAdvantage best_advantage(std::span<const ScoredRound> rounds, bool two_sided = false);

/// Largest TPR among ROC vertices with FPR <= alpha.
double empirical_power(const RocCurve& curve, double alpha);

/// Sup-norm (Chebyshev-Hausdorff) distance between two monotone curves that
/// run from (0,0) to (1,1). For such curves the closest point in the max-norm
/// lies along the anti-diagonal, so the distance is the sup over s of
/// |x_a(s) - x_b(s)| where x(s) solves x + y(x) = s. Exact for polylines.
double curve_gap(std::span<const RocPoint> a, std::span<const RocPoint> b);

/// Dense polyline of alpha -> Phi(Phi^{-1}(alpha) + sqrt(m)), refined near 0.
std::vector<RocPoint> theory_polyline(double m_eff);

/// curve_gap between an empirical ROC and the theoretical trade-off curve.
double theory_gap(const RocCurve& curve, double m_eff);

}  // namespace miaudit
