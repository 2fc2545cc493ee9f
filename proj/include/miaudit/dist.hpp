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
#include "miaudit/random.hpp"

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace miaudit {

struct Bernoulli {
  double p;
};

struct Gaussian {
  double mean;
  double var;
};

using ColumnLaw = std::variant<Bernoulli, Gaussian>;

/// Column-wise independent distribution over R^d.
///
/// Every column has finite moments of all orders, so the (4+delta)-moment
/// condition of the asymptotic leakage results holds for any instance; there
/// is no runtime check for it. Parameters are validated at construction:
/// Bernoulli p must lie strictly inside (0, 1) and Gaussian variances must be
/// positive, so every precision-weighted formula downstream is well defined.
/// Immutable after construction.
class ProductDistribution {
 public:
  explicit ProductDistribution(std::vector<ColumnLaw> columns);

  static ProductDistribution bernoulli(const Vector& p);
  static ProductDistribution gaussian(const Vector& mean, const Vector& var);
  /// d Bernoulli columns with p drawn uniformly from [a, 1-a].
  static ProductDistribution bernoulli_uniform(Index d, double a, std::uint64_t seed);

  [[nodiscard]] Index dim() const { return static_cast<Index>(columns_.size()); }
  [[nodiscard]] const std::vector<ColumnLaw>& columns() const { return columns_; }
  [[nodiscard]] const Vector& mean() const { return mean_; }
  [[nodiscard]] const Vector& variance() const { return variance_; }
  [[nodiscard]] bool all_bernoulli() const { return all_bernoulli_; }

  /// n x d matrix of i.i.d. rows.
  [[nodiscard]] Matrix sample(Index n, Engine& rng) const;
  /// Fills `out` (n x d) in place; avoids reallocating in hot loops.
  void sample_into(Matrix& out, Engine& rng) const;

  /// n i.i.d. draws of column j, written to `out`.
  void sample_column(Index j, std::span<double> out, Engine& rng) const;

  /// The sum of `count` i.i.d. draws of column j, sampled directly from its
  /// exact law (binomial or normal).
  [[nodiscard]] double sample_column_sum(Index j, Index count, Engine& rng) const;
  [[nodiscard]] Vector sample_point(Engine& rng) const;

 private:
  std::vector<ColumnLaw> columns_;
  Vector mean_;
  Vector variance_;
  std::vector<std::uint32_t> thresholds_;  // Bernoulli columns only
  bool all_bernoulli_ = true;
};

struct Moments {
  Vector mu;
  Vector sigma2;
};

Moments moments(const ProductDistribution& dist);

/// Squared Mahalanobis distance sum_j (z_j - mu_j)^2 / sigma_j^2.
double mahalanobis2(const ProductDistribution& dist, const VectorRef& z);

/// Leakage score m* = mahalanobis2 / n.
double leakage_score(const ProductDistribution& dist, const VectorRef& z, Index n);

struct ExtremeTargets {
  Vector easy;  // 1{p_j <= 1/2}
  Vector hard;  // 1{p_j > 1/2}
};

/// Binary points furthest from and closest to p. Requires Bernoulli columns.
ExtremeTargets make_extreme_targets(const ProductDistribution& dist);

}  // namespace miaudit
