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

#include "miaudit/whitebox.hpp"

#include "miaudit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace miaudit {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

ToyModel::ToyModel(Architecture arch, Index features, Index classes)
    : arch_(arch), features_(features), classes_(classes), theta_(Vector::Zero(dim())) {}

ToyModel ToyModel::linear_regression(Index features) {
  require(features >= 1, "linear regression needs at least one feature");
  return ToyModel(Architecture::LinearRegression, features, 1);
}

ToyModel ToyModel::logistic_regression(Index features, Index classes) {
  require(features >= 1, "logistic regression needs at least one feature");
  require(classes >= 2, "logistic regression needs at least two classes");
  return ToyModel(Architecture::LogisticRegression, features, classes);
}

void ToyModel::set_theta(Vector theta) {
  require_same_dim(theta.size(), dim(), "ToyModel::set_theta");
  theta_ = std::move(theta);
}

ToyModel ToyModel::with_theta(Vector theta) const {
  ToyModel m = *this;
  m.set_theta(std::move(theta));
  return m;
}

void ToyModel::check_example(const VectorRef& x, double y) const {
  require_same_dim(x.size(), features_, "example features");
  if (arch_ == Architecture::LogisticRegression) {
    if (!(y >= 0.0 && y < static_cast<double>(classes_) && y == std::floor(y))) {
      throw ConfigError("label " + std::to_string(y) + " out of range for " +
                        std::to_string(classes_) + " classes");
    }
  }
}

double ToyModel::loss(const VectorRef& x, double y) const {
  check_example(x, y);
  const Eigen::Map<const RowMajorMatrix> w(theta_.data(), classes_, features_);
  const Vector logits = w * x + theta_.tail(classes_);
  if (arch_ == Architecture::LinearRegression) {
    const double r = logits[0] - y;
    return 0.5 * r * r;
  }
  const double top = logits.maxCoeff();
  const double lse = top + std::log((logits.array() - top).exp().sum());
  return lse - logits[static_cast<Index>(y)];
}

Vector ToyModel::grad(const VectorRef& x, double y) const {
  check_example(x, y);
  const Eigen::Map<const RowMajorMatrix> w(theta_.data(), classes_, features_);
  Vector residual = w * x + theta_.tail(classes_);
  if (arch_ == Architecture::LinearRegression) {
    residual[0] -= y;
  } else {
    const double top = residual.maxCoeff();
    residual = (residual.array() - top).exp();
    residual /= residual.sum();
    residual[static_cast<Index>(y)] -= 1.0;
  }
  Vector g(dim());
  Eigen::Map<RowMajorMatrix>(g.data(), classes_, features_) = residual * x.transpose();
  g.tail(classes_) = residual;
  return g;
}

double ToyModel::mean_loss(const Dataset& data) const {
  require(data.rows() >= 1, "mean_loss needs data");
  double total = 0.0;
  for (Index i = 0; i < data.rows(); ++i) total += loss(data.features.row(i).transpose(), data.labels[i]);
  return total / static_cast<double>(data.rows());
}

Vector clip_gradient(const VectorRef& g, double bound) {
  require(bound > 0.0, "clipping bound must be positive");
  const double norm = g.norm();
  if (norm <= bound) return g;
  return g * (bound / norm);
}

TrainTrace train_sgd(const ToyModel& model, const Dataset& data, const SgdOptions& opts) {
  const Index n = data.rows();
  require(n >= 1, "training needs data");
  require_same_dim(data.labels.size(), n, "dataset labels");
  require(opts.batch_size >= 1 && opts.batch_size <= n, "batch size must lie in [1, n]");
  require(opts.epochs >= 1, "training needs at least one epoch");
  require(opts.eta >= 0.0, "learning rate must be >= 0");
  require(opts.noise >= 0.0, "noise multiplier must be >= 0");
  require(opts.noise == 0.0 || opts.clip.has_value(), "DP-SGD noise needs a clipping bound");
  if (opts.clip) require(*opts.clip > 0.0, "clipping bound must be positive");

  Engine rng = StreamFactory(opts.seed).stream(0);
  std::normal_distribution<double> normal(0.0, 1.0);

  TrainTrace trace;
  trace.eta = opts.eta;
  trace.batch_size = opts.batch_size;
  trace.steps_per_epoch = (n + opts.batch_size - 1) / opts.batch_size;
  trace.thetas.push_back(model.theta());

  ToyModel current = model;
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index epoch = 0; epoch < opts.epochs; ++epoch) {
    std::iota(perm.begin(), perm.end(), Index{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Index start = 0; start < n; start += opts.batch_size) {
      const Index stop = std::min(n, start + opts.batch_size);
      std::vector<Index> batch(perm.begin() + start, perm.begin() + stop);
      Vector step = Vector::Zero(model.dim());
      for (Index i : batch) {
        Vector g = current.grad(data.features.row(i).transpose(), data.labels[i]);
        step += opts.clip ? clip_gradient(g, *opts.clip) : g;
      }
      step /= static_cast<double>(batch.size());
      if (opts.noise > 0.0) {
        const double sd = opts.noise * *opts.clip;
        for (Index j = 0; j < step.size(); ++j) step[j] += sd * normal(rng);
      }
      Vector next = current.theta() - opts.eta * step;
      current.set_theta(next);
      trace.thetas.push_back(std::move(next));
      trace.batches.push_back(std::move(batch));
    }
  }
  return trace;
}

Index ParamSlice::resolved_length(Index dim) const {
  const Index len = length < 0 ? dim - offset : length;
  if (offset < 0 || len < 1 || offset + len > dim) {
    throw ConfigError("parameter slice [" + std::to_string(offset) + ", " +
                      std::to_string(offset + len) + ") out of bounds for dimension " +
                      std::to_string(dim));
  }
  return len;
}

Matrix example_gradients(const ToyModel& model, const Dataset& data, ParamSlice slice) {
  const Index len = slice.resolved_length(model.dim());
  Matrix out(data.rows(), len);
  for (Index i = 0; i < data.rows(); ++i) {
    out.row(i) = model.grad(data.features.row(i).transpose(), data.labels[i])
                     .segment(slice.offset, len)
                     .transpose();
  }
  return out;
}

double run_whitebox_attack(const ToyModel& model, const TrainTrace& trace, const Example& target,
                           const ReferenceEstimates& refs, WhiteboxAttack attack,
                           ParamSlice slice) {
  const Index len = slice.resolved_length(model.dim());
  require_same_dim(refs.dim(), len, "reference estimates vs attacked slice");
  require(trace.eta > 0.0, "batch gradients cannot be recovered from a trace with eta = 0");
  require(static_cast<Index>(trace.thetas.size()) == trace.steps() + 1,
          "trace must hold one more iterate than steps");

  const Index steps = std::min(trace.steps_per_epoch, trace.steps());
  ToyModel at = model;
  double total = 0.0;
  for (Index t = 0; t < steps; ++t) {
    const auto& before = trace.thetas[static_cast<std::size_t>(t)];
    const auto& after = trace.thetas[static_cast<std::size_t>(t + 1)];
    at.set_theta(before);
    const Vector g_target = at.grad(target.x, target.y).segment(slice.offset, len);
    const Vector g_batch = ((before - after) / trace.eta).segment(slice.offset, len);
    if (attack == WhiteboxAttack::Scalar) {
      total += g_target.dot(g_batch);
      continue;
    }
    const double b = static_cast<double>(trace.batches[static_cast<std::size_t>(t)].size());
    const Vector a = refs.whiten(g_target - refs.mean());
    const Vector c = refs.whiten(g_batch - refs.mean());
    total += a.dot(c) - a.squaredNorm() / (2.0 * b);
  }
  return total;
}

BlobSampler::BlobSampler(Index features, Index classes, double separation,
                         std::uint64_t center_seed) {
  require(features >= 1 && classes >= 2, "blobs need f >= 1 and c >= 2");
  require(separation >= 0.0, "blob separation must be >= 0");
  Engine rng = StreamFactory(center_seed).stream(0);
  std::normal_distribution<double> normal(0.0, 1.0);
  centers_.resize(classes, features);
  for (Index k = 0; k < classes; ++k) {
    Vector u(features);
    for (Index i = 0; i < features; ++i) u[i] = normal(rng);
    centers_.row(k) = (0.5 * separation / u.norm()) * u.transpose();
  }
}

Dataset BlobSampler::sample(Index n, Engine& rng) const {
  require(n >= 1, "blob sample needs n >= 1");
  std::uniform_int_distribution<Index> label(0, centers_.rows() - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset d{Matrix(n, centers_.cols()), Vector(n)};
  for (Index i = 0; i < n; ++i) {
    const Index y = label(rng);
    d.labels[i] = static_cast<double>(y);
    for (Index j = 0; j < centers_.cols(); ++j) d.features(i, j) = centers_(y, j) + normal(rng);
  }
  return d;
}

DataSource blob_source(BlobSampler sampler) {
  return [sampler = std::move(sampler)](Index n, Engine& rng) { return sampler.sample(n, rng); };
}

DataSource pool_source(Dataset pool) {
  require(pool.rows() >= 1, "data pool is empty");
  require_same_dim(pool.labels.size(), pool.rows(), "pool labels");
  return [pool = std::move(pool)](Index n, Engine& rng) {
    require(n <= pool.rows(), "requested more rows than the data pool holds");
    std::vector<Index> idx(static_cast<std::size_t>(pool.rows()));
    std::iota(idx.begin(), idx.end(), Index{0});
    for (Index i = 0; i < n; ++i) {
      std::uniform_int_distribution<Index> pick(i, pool.rows() - 1);
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
    }
    idx.resize(static_cast<std::size_t>(n));
    return Dataset{pool.features(idx, Eigen::all), pool.labels(idx)};
  };
}

std::vector<WhiteboxRound> run_whitebox_game(const DataSource& source, const ToyModel& init,
                                             const Example& target,
                                             const ReferenceEstimates& refs,
                                             const WhiteboxGameConfig& cfg) {
  require(cfg.repetitions >= 1, "white-box game needs at least one repetition");
  require(cfg.n >= 1, "white-box game needs n >= 1");
  const StreamFactory streams(cfg.master_seed);
  std::vector<WhiteboxRound> out(static_cast<std::size_t>(cfg.repetitions));
  parallel_for(cfg.repetitions, cfg.threads, [&](Index begin, Index end) {
    for (Index r = begin; r < end; ++r) {
      Engine rng = streams.stream(static_cast<std::uint64_t>(r));
      Dataset data = source(cfg.n, rng);
      std::bernoulli_distribution coin(0.5);
      const bool member = coin(rng);
      if (member) {
        std::uniform_int_distribution<Index> row(0, data.rows() - 1);
        const Index j = row(rng);
        data.features.row(j) = target.x.transpose();
        data.labels[j] = target.y;
      }
      SgdOptions opts = cfg.sgd;
      opts.seed = rng();
      const TrainTrace trace = train_sgd(init, data, opts);
      out[static_cast<std::size_t>(r)] = {
          member,
          run_whitebox_attack(init, trace, target, refs, WhiteboxAttack::Covariance, cfg.slice),
          run_whitebox_attack(init, trace, target, refs, WhiteboxAttack::Scalar, cfg.slice)};
    }
  });
  return out;
}

std::vector<ScoredRound> attack_rounds(const std::vector<WhiteboxRound>& rounds,
                                       WhiteboxAttack attack) {
  std::vector<ScoredRound> out;
  out.reserve(rounds.size());
  for (const auto& r : rounds) {
    out.push_back({attack == WhiteboxAttack::Covariance ? r.covariance : r.scalar, r.member});
  }
  return out;
}

}  // namespace miaudit
