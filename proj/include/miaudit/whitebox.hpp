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
#include "miaudit/random.hpp"
#include "miaudit/roc.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace miaudit {

enum class Architecture { LinearRegression, LogisticRegression };

/// Labelled examples, one per row. Labels are class indices for logistic
/// regression and real targets for linear regression.
struct Dataset {
  Matrix features;
  Vector labels;

  [[nodiscard]] Index rows() const { return features.rows(); }
};

struct Example {
  Vector x;
  double y;
};

/// Linear or multinomial-logistic model with analytic gradients.
///
/// Parameters are laid out as the c x f weight matrix in row-major order
/// followed by the c biases, so dim() = f*c + c. Linear regression has a
/// single output (c = 1) and squared loss; logistic regression uses softmax
/// cross-entropy.
class ToyModel {
 public:
  static ToyModel linear_regression(Index features);
  static ToyModel logistic_regression(Index features, Index classes);

  [[nodiscard]] Architecture arch() const { return arch_; }
  [[nodiscard]] Index features() const { return features_; }
  [[nodiscard]] Index classes() const { return classes_; }
  [[nodiscard]] Index dim() const { return features_ * classes_ + classes_; }

  [[nodiscard]] const Vector& theta() const { return theta_; }
  void set_theta(Vector theta);
  [[nodiscard]] ToyModel with_theta(Vector theta) const;

  [[nodiscard]] double loss(const VectorRef& x, double y) const;
  [[nodiscard]] Vector grad(const VectorRef& x, double y) const;
  [[nodiscard]] double mean_loss(const Dataset& data) const;

 private:
  ToyModel(Architecture arch, Index features, Index classes);
  void check_example(const VectorRef& x, double y) const;

  Architecture arch_;
  Index features_;
  Index classes_;
  Vector theta_;
};

struct SgdOptions {
  double eta = 0.1;
  Index batch_size = 64;
  Index epochs = 1;
  std::optional<double> clip;  // per-example L2 clipping bound C
  double noise = 0.0;          // gamma: adds N(0, gamma^2 C^2 I) to each step
  std::uint64_t seed = 0;
};

/// Every iterate theta_0 .. theta_T together with the batches that produced them.
struct TrainTrace {
  std::vector<Vector> thetas;
  double eta = 0.0;
  Index batch_size = 0;
  Index steps_per_epoch = 0;
  std::vector<std::vector<Index>> batches;

  [[nodiscard]] Index steps() const { return static_cast<Index>(batches.size()); }
};

/// min(1, C/|g|) g.
Vector clip_gradient(const VectorRef& g, double bound);

/// Mini-batch SGD (optionally DP-SGD) over shuffled epochs.
TrainTrace train_sgd(const ToyModel& model, const Dataset& data, const SgdOptions& opts);

/// Contiguous block of the parameter vector to attack; length < 0 means
/// "to the end".
struct ParamSlice {
  Index offset = 0;
  Index length = -1;

  [[nodiscard]] Index resolved_length(Index dim) const;
};

enum class WhiteboxAttack { Covariance, Scalar };

/// Per-example gradients at the model's current parameters, one row each,
/// restricted to `slice`.
Matrix example_gradients(const ToyModel& model, const Dataset& data, ParamSlice slice = {});

/// Sum over the first epoch of per-step scores. The batch gradient of step t
/// is (theta_t - theta_{t+1}) / eta and the target gradient is taken at theta_t.
/// Covariance: (g* - mu0)^T C0^{-1} (g_batch - mu0) - |g* - mu0|^2_{C0^{-1}} / (2b).
/// Scalar: g*^T g_batch.
double run_whitebox_attack(const ToyModel& model, const TrainTrace& trace, const Example& target,
                           const ReferenceEstimates& refs, WhiteboxAttack attack,
                           ParamSlice slice = {});

/// Gaussian class blobs: y uniform over classes, x = center_y + N(0, I).
class BlobSampler {
 public:
  BlobSampler(Index features, Index classes, double separation, std::uint64_t center_seed);

  [[nodiscard]] Dataset sample(Index n, Engine& rng) const;
  [[nodiscard]] const Matrix& centers() const { return centers_; }

 private:
  Matrix centers_;  // classes x features
};

/// Draws a dataset of the requested size.
using DataSource = std::function<Dataset(Index n, Engine& rng)>;

DataSource blob_source(BlobSampler sampler);
/// Rows drawn without replacement from a fixed pool.
DataSource pool_source(Dataset pool);

struct WhiteboxGameConfig {
  Index n = 512;
  Index repetitions = 200;
  SgdOptions sgd;
  ParamSlice slice;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;
};

struct WhiteboxRound {
  bool member;
  double covariance;
  double scalar;
};

/// Fixed-target white-box game: each repetition draws a dataset, includes the
/// target with probability 1/2, trains from `init` and scores with both attacks.
std::vector<WhiteboxRound> run_whitebox_game(const DataSource& source, const ToyModel& init,
                                             const Example& target,
                                             const ReferenceEstimates& refs,
                                             const WhiteboxGameConfig& cfg);

std::vector<ScoredRound> attack_rounds(const std::vector<WhiteboxRound>& rounds,
                                       WhiteboxAttack attack);

}  // namespace miaudit
