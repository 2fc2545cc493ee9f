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

#include "miaudit/canary.hpp"

#include <algorithm>

namespace miaudit {

ReferenceEstimates estimate_reference(const MatrixRef& refs, const ReferenceOptions& opts) {
  const Index n0 = refs.rows();
  require(n0 >= 2, "reference estimation needs at least two reference vectors");
  require(refs.cols() >= 1, "reference vectors must be non-empty");
  const double inv_n0 = 1.0 / static_cast<double>(n0);
  Vector mu0 = refs.colwise().mean().transpose();

  if (opts.mode == CovarianceMode::Diagonal) {
    Vector second = refs.array().square().colwise().sum().transpose() * inv_n0;
    if (opts.centered) second.array() -= mu0.array().square();
    return ReferenceEstimates::diagonal(std::move(mu0), std::move(second), n0, opts.ridge);
  }

  Matrix second = Matrix::Zero(refs.cols(), refs.cols());
  second.selfadjointView<Eigen::Lower>().rankUpdate(refs.transpose(), inv_n0);
  if (opts.centered) second.selfadjointView<Eigen::Lower>().rankUpdate(mu0, -1.0);
  second.triangularView<Eigen::StrictlyUpper>() = second.transpose();
  return ReferenceEstimates::full(std::move(mu0), std::move(second), n0, opts.ridge);
}

std::vector<CanaryScore> rank_canaries(const MatrixRef& candidates,
                                       const ReferenceEstimates& refs) {
  require(candidates.rows() >= 1, "canary selection needs at least one candidate");
  require_same_dim(candidates.cols(), refs.dim(), "canary candidates");
  std::vector<CanaryScore> ranked;
  ranked.reserve(static_cast<std::size_t>(candidates.rows()));
  for (Index k = 0; k < candidates.rows(); ++k) {
    ranked.push_back({k, mahalanobis_score_est(candidates.row(k).transpose(), refs)});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const CanaryScore& a, const CanaryScore& b) { return a.score > b.score; });
  return ranked;
}

CanaryScore select_canary(const MatrixRef& candidates, const ReferenceEstimates& refs) {
  return rank_canaries(candidates, refs).front();
}

}  // namespace miaudit
