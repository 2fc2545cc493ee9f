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

#include <string>
#include <variant>
#include <vector>

namespace miaudit {

struct EmpiricalMean {};

/// Column means plus N(0, diag(gamma^2)) / sqrt(n).
struct NoisyMean {
  Vector gamma;
};

/// Mean of k_n = max(1, round(rho * n)) rows drawn without replacement.
struct SubsampledMean {
  double rho;
};

class Mechanism {
 public:
  using Kind = std::variant<EmpiricalMean, NoisyMean, SubsampledMean>;

  Mechanism() : kind_(EmpiricalMean{}) {}

  static Mechanism empirical_mean() { return Mechanism(EmpiricalMean{}); }
  static Mechanism noisy_mean(Vector gamma);
  static Mechanism noisy_mean(double gamma, Index d) {
    return noisy_mean(Vector::Constant(d, gamma));
  }
  static Mechanism subsampled_mean(double rho);

  [[nodiscard]] const Kind& kind() const { return kind_; }
  [[nodiscard]] std::string name() const;

  template <class T>
  [[nodiscard]] const T* as() const {
    return std::get_if<T>(&kind_);
  }

  /// The released output o for dataset `data` (n x d).
  [[nodiscard]] Vector apply(const MatrixRef& data, Engine& rng) const;

  // apply() in three stages, so a crafter can stream the dataset one column
  // at a time: pick the rows, average each column over them, add noise.

  /// Rows that enter the mean; empty means all n rows. Sorted.
  [[nodiscard]] std::vector<Index> select_rows(Index n, Engine& rng) const;
  /// Mean of `column` (length n) over the selected rows.
  [[nodiscard]] static double reduce(const double* column, Index n,
                                     const std::vector<Index>& rows);
  void add_noise(Vector& out, Index n, Engine& rng) const;

 private:
  explicit Mechanism(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// k_n for the sub-sampled mean; rounds rho * n and floors at 1.
Index subsample_size(double rho, Index n);

}  // namespace miaudit
