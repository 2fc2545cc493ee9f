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

#include "miaudit/mech.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace miaudit {

Mechanism Mechanism::noisy_mean(Vector gamma) {
  require(gamma.size() >= 1, "noisy_mean needs a non-empty gamma");
  require((gamma.array() >= 0.0).all() && gamma.allFinite(),
          "noisy_mean gamma entries must be finite and >= 0");
  return Mechanism(NoisyMean{std::move(gamma)});
}

Mechanism Mechanism::subsampled_mean(double rho) {
  require(rho > 0.0 && rho <= 1.0, "subsampled_mean rho must lie in (0, 1]");
  return Mechanism(SubsampledMean{rho});
}

std::string Mechanism::name() const {
  if (as<EmpiricalMean>()) return "empirical_mean";
  if (as<NoisyMean>()) return "noisy_mean";
  return "subsampled_mean";
}

Index subsample_size(double rho, Index n) {
  require(rho > 0.0 && rho <= 1.0, "rho must lie in (0, 1]");
  require(n >= 1, "n must be >= 1");
  const auto k = static_cast<Index>(std::llround(rho * static_cast<double>(n)));
  return std::clamp<Index>(k, 1, n);
}

std::vector<Index> Mechanism::select_rows(Index n, Engine& rng) const {
  const auto* sub = as<SubsampledMean>();
  if (!sub) return {};
  const Index k = subsample_size(sub->rho, n);
  if (k == n) return {};

  // Partial Fisher-Yates: the first k slots become a uniform k-subset.
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(pick(rng))]);
  }
  perm.resize(static_cast<std::size_t>(k));
  std::sort(perm.begin(), perm.end());
  return perm;
}

double Mechanism::reduce(const double* column, Index n, const std::vector<Index>& rows) {
  double sum = 0.0;
  if (rows.empty()) {
    for (Index i = 0; i < n; ++i) sum += column[i];
    return sum / static_cast<double>(n);
  }
  for (Index i : rows) sum += column[i];
  return sum / static_cast<double>(rows.size());
}

void Mechanism::add_noise(Vector& out, Index n, Engine& rng) const {
  const auto* noisy = as<NoisyMean>();
  if (!noisy) return;
  require_same_dim(noisy->gamma.size(), out.size(), "noisy_mean gamma");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index j = 0; j < out.size(); ++j) out[j] += scale * noisy->gamma[j] * normal(rng);
}

Vector Mechanism::apply(const MatrixRef& data, Engine& rng) const {
  const Index n = data.rows();
  require(n >= 1, "mechanism input needs at least one row");
  if (const auto* noisy = as<NoisyMean>()) {
    require_same_dim(noisy->gamma.size(), data.cols(), "noisy_mean gamma");
  }
  const auto rows = select_rows(n, rng);
  Vector out(data.cols());
  for (Index j = 0; j < data.cols(); ++j) out[j] = reduce(data.col(j).data(), n, rows);
  add_noise(out, n, rng);
  return out;
}

}  // namespace miaudit
