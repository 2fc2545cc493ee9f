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

#include "miaudit/dist.hpp"

#include <cmath>
#include <string>

namespace miaudit {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ProductDistribution::ProductDistribution(std::vector<ColumnLaw> columns)
    : columns_(std::move(columns)) {
  require(!columns_.empty(), "distribution needs at least one column");
  const Index d = dim();
  mean_.resize(d);
  variance_.resize(d);
  thresholds_.assign(columns_.size(), 0);
  for (Index j = 0; j < d; ++j) {
    std::visit(Overloaded{
                   [&](const Bernoulli& b) {
                     if (!(b.p > 0.0 && b.p < 1.0)) {
                       throw ConfigError("bernoulli p must lie in the open interval (0,1); column " +
                                         std::to_string(j) + " has p=" + std::to_string(b.p));
                     }
                     mean_[j] = b.p;
                     variance_[j] = b.p * (1.0 - b.p);
                     thresholds_[j] = bernoulli_threshold(b.p);
                   },
                   [&](const Gaussian& g) {
                     if (!(g.var > 0.0) || !std::isfinite(g.var) || !std::isfinite(g.mean)) {
                       throw ConfigError("gaussian column " + std::to_string(j) +
                                         " needs finite mean and positive variance");
                     }
                     mean_[j] = g.mean;
                     variance_[j] = g.var;
                     all_bernoulli_ = false;
                   },
               },
               columns_[j]);
  }
}

ProductDistribution ProductDistribution::bernoulli(const Vector& p) {
  std::vector<ColumnLaw> cols;
  cols.reserve(p.size());
  for (Index j = 0; j < p.size(); ++j) cols.emplace_back(Bernoulli{p[j]});
  return ProductDistribution(std::move(cols));
}

ProductDistribution ProductDistribution::gaussian(const Vector& mean, const Vector& var) {
  require_same_dim(mean.size(), var.size(), "gaussian(mean, var)");
  std::vector<ColumnLaw> cols;
  cols.reserve(mean.size());
  for (Index j = 0; j < mean.size(); ++j) cols.emplace_back(Gaussian{mean[j], var[j]});
  return ProductDistribution(std::move(cols));
}

ProductDistribution ProductDistribution::bernoulli_uniform(Index d, double a, std::uint64_t seed) {
  require(d >= 1, "bernoulli_uniform needs d >= 1");
  require(a > 0.0 && a < 0.5, "bernoulli_uniform needs a in (0, 1/2)");
  Engine rng = StreamFactory(seed).stream(0);
  std::uniform_real_distribution<double> unif(a, 1.0 - a);
  Vector p(d);
  for (Index j = 0; j < d; ++j) p[j] = unif(rng);
  return bernoulli(p);
}

void ProductDistribution::sample_column(Index j, std::span<double> out, Engine& rng) const {
  const auto n = out.size();
  if (const auto* g = std::get_if<Gaussian>(&columns_[j])) {
    std::normal_distribution<double> normal(g->mean, std::sqrt(g->var));
    for (auto& x : out) x = normal(rng);
    return;
  }
  const std::uint32_t thr = thresholds_[j];
  std::size_t i = 0;
  for (; i + 1 < n; i += 2) {
    const std::uint64_t bits = rng();
    out[i] = static_cast<double>(static_cast<std::uint32_t>(bits) < thr);
    out[i + 1] = static_cast<double>(static_cast<std::uint32_t>(bits >> 32) < thr);
  }
  if (i < n) out[i] = static_cast<double>(static_cast<std::uint32_t>(rng()) < thr);
}

double ProductDistribution::sample_column_sum(Index j, Index count, Engine& rng) const {
  if (count <= 0) return 0.0;
  const auto c = static_cast<double>(count);
  if (const auto* g = std::get_if<Gaussian>(&columns_[j])) {
    std::normal_distribution<double> normal(c * g->mean, std::sqrt(c * g->var));
    return normal(rng);
  }
  std::binomial_distribution<Index> binom(count, std::get<Bernoulli>(columns_[j]).p);
  return static_cast<double>(binom(rng));
}

void ProductDistribution::sample_into(Matrix& out, Engine& rng) const {
  require(out.rows() >= 1, "sample size must be >= 1");
  require_same_dim(out.cols(), dim(), "sample_into");
  const auto n = static_cast<std::size_t>(out.rows());
  for (Index j = 0; j < dim(); ++j) sample_column(j, {out.col(j).data(), n}, rng);
}

Matrix ProductDistribution::sample(Index n, Engine& rng) const {
  require(n >= 1, "sample size must be >= 1");
  Matrix out(n, dim());
  sample_into(out, rng);
  return out;
}

Vector ProductDistribution::sample_point(Engine& rng) const {
  Matrix row(1, dim());
  sample_into(row, rng);
  return row.row(0).transpose();
}

Moments moments(const ProductDistribution& dist) { return {dist.mean(), dist.variance()}; }

double mahalanobis2(const ProductDistribution& dist, const VectorRef& z) {
  require_same_dim(z.size(), dist.dim(), "mahalanobis2");
  return ((z - dist.mean()).array().square() / dist.variance().array()).sum();
}

double leakage_score(const ProductDistribution& dist, const VectorRef& z, Index n) {
  require(n >= 1, "leakage_score needs n >= 1");
  return mahalanobis2(dist, z) / static_cast<double>(n);
}

ExtremeTargets make_extreme_targets(const ProductDistribution& dist) {
  require(dist.all_bernoulli(), "extreme targets are defined for Bernoulli columns only");
  const Vector& p = dist.mean();
  ExtremeTargets t;
  t.easy = (p.array() <= 0.5).cast<double>();
  t.hard = (p.array() > 0.5).cast<double>();
  return t;
}

}  // namespace miaudit
