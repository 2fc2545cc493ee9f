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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace miaudit {
namespace {

TEST(ProductDistribution, RejectsBoundaryBernoulli) {
  EXPECT_THROW(ProductDistribution::bernoulli(Vector::Constant(2, 1.0)), ConfigError);
  EXPECT_THROW(ProductDistribution::bernoulli(Vector::Constant(2, 0.0)), ConfigError);
  EXPECT_THROW(ProductDistribution::bernoulli(Vector::Constant(1, 1.0 - 1e-18)), ConfigError);
  EXPECT_THROW(ProductDistribution::gaussian(Vector::Zero(1), Vector::Zero(1)), ConfigError);
  EXPECT_THROW(ProductDistribution(std::vector<ColumnLaw>{}), ConfigError);
  EXPECT_THROW(ProductDistribution::bernoulli_uniform(10, 0.5, 1), ConfigError);
}

TEST(ProductDistribution, SamplingIsDeterministic) {
  const auto dist = ProductDistribution::gaussian(Vector::Zero(1), Vector::Ones(1));
  Engine a = StreamFactory(3).stream(0);
  Engine b = StreamFactory(3).stream(0);
  const Matrix x = dist.sample(4, a);
  const Matrix y = dist.sample(4, b);
  ASSERT_EQ(x.rows(), 4);
  EXPECT_EQ(x, y);
}

TEST(ProductDistribution, ColumnMeansConverge) {
  const auto dist = ProductDistribution::bernoulli(Vector::Constant(2, 0.5));
  Engine rng = StreamFactory(11).stream(0);
  const Matrix x = dist.sample(100000, rng);
  const Vector means = x.colwise().mean();
  EXPECT_NEAR(means[0], 0.5, 0.01);
  EXPECT_NEAR(means[1], 0.5, 0.01);
}

TEST(ProductDistribution, SampleMeansWithinSixSigma) {
  std::vector<ColumnLaw> cols{Bernoulli{0.1}, Bernoulli{0.37}, Gaussian{-2.0, 9.0},
                              Bernoulli{0.93}, Gaussian{0.5, 0.01}};
  const ProductDistribution dist(cols);
  constexpr Index N = 100000;
  Engine rng = StreamFactory(12).stream(0);
  const Vector means = dist.sample(N, rng).colwise().mean();
  for (Index j = 0; j < dist.dim(); ++j) {
    EXPECT_LE(std::abs(means[j] - dist.mean()[j]),
              6.0 * std::sqrt(dist.variance()[j] / static_cast<double>(N)))
        << "column " << j;
  }
}

TEST(ProductDistribution, ColumnSumMatchesBinomialMoments) {
  const auto dist = ProductDistribution::bernoulli(Vector::Constant(1, 0.3));
  Engine rng = StreamFactory(13).stream(0);
  constexpr int reps = 20000;
  constexpr Index count = 40;
  double s = 0, s2 = 0;
  for (int r = 0; r < reps; ++r) {
    const double v = dist.sample_column_sum(0, count, rng);
    EXPECT_EQ(v, std::floor(v));
    s += v;
    s2 += v * v;
  }
  const double mean = s / reps;
  const double var = s2 / reps - mean * mean;
  EXPECT_NEAR(mean, 12.0, 4.0 * std::sqrt(8.4 / reps));
  EXPECT_NEAR(var, 8.4, 0.05 * 8.4);
  EXPECT_EQ(dist.sample_column_sum(0, 0, rng), 0.0);
}

TEST(Moments, TextbookValues) {
  const ProductDistribution dist(
      std::vector<ColumnLaw>{Bernoulli{0.5}, Gaussian{3.0, 4.0}, Bernoulli{0.25}});
  const Moments m = moments(dist);
  EXPECT_DOUBLE_EQ(m.mu[0], 0.5);
  EXPECT_DOUBLE_EQ(m.sigma2[0], 0.25);
  EXPECT_DOUBLE_EQ(m.mu[1], 3.0);
  EXPECT_DOUBLE_EQ(m.sigma2[1], 4.0);
  EXPECT_DOUBLE_EQ(m.mu[2], 0.25);
  EXPECT_DOUBLE_EQ(m.sigma2[2], 0.1875);
}

TEST(Mahalanobis, ZeroAtMeanAndHandValues) {
  const auto dist = ProductDistribution::bernoulli_uniform(50, 0.25, 4);
  EXPECT_EQ(mahalanobis2(dist, dist.mean()), 0.0);
  EXPECT_EQ(leakage_score(dist, dist.mean(), 10), 0.0);

  const auto half = ProductDistribution::bernoulli(Vector::Constant(1, 0.5));
  EXPECT_DOUBLE_EQ(mahalanobis2(half, Vector::Ones(1)), 1.0);
  EXPECT_DOUBLE_EQ(leakage_score(half, Vector::Ones(1), 4), 0.25);
  EXPECT_THROW(mahalanobis2(half, Vector::Ones(2)), ConfigError);
  EXPECT_THROW(leakage_score(half, Vector::Ones(1), 0), ConfigError);
}

TEST(Mahalanobis, InvariantUnderJointPermutation) {
  const auto dist = ProductDistribution::bernoulli_uniform(30, 0.1, 8);
  Engine rng = StreamFactory(8).stream(1);
  const Vector z = dist.sample_point(rng);
  std::vector<Index> perm(30);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  Vector p(30), zp(30);
  for (Index j = 0; j < 30; ++j) {
    p[j] = dist.mean()[perm[j]];
    zp[j] = z[perm[j]];
  }
  EXPECT_NEAR(mahalanobis2(ProductDistribution::bernoulli(p), zp), mahalanobis2(dist, z),
              1e-12 * mahalanobis2(dist, z));
}

TEST(Mahalanobis, RandomTargetNearTau) {
  const auto dist = ProductDistribution::bernoulli_uniform(5000, 0.25, 20240521);
  Engine rng = StreamFactory(7).stream(0);
  EXPECT_NEAR(leakage_score(dist, dist.sample_point(rng), 1000), 5.0, 0.3);
}

TEST(ExtremeTargets, Definitions) {
  Vector p(2);
  p << 0.25, 0.75;
  const auto t = make_extreme_targets(ProductDistribution::bernoulli(p));
  EXPECT_EQ(t.easy, (Vector(2) << 1, 0).finished());
  EXPECT_EQ(t.hard, (Vector(2) << 0, 1).finished());

  const auto tie = make_extreme_targets(ProductDistribution::bernoulli(Vector::Constant(1, 0.5)));
  EXPECT_EQ(tie.easy[0], 1.0);
  EXPECT_EQ(tie.hard[0], 0.0);

  const auto gauss = ProductDistribution::gaussian(Vector::Zero(2), Vector::Ones(2));
  EXPECT_THROW(make_extreme_targets(gauss), ConfigError);
}

// Brute force over {0,1}^d: the easy point attains the maximum and the hard
// point the minimum.
TEST(ExtremeTargets, ExhaustiveOverBinaryPoints) {
  for (Index d = 1; d <= 12; ++d) {
    const auto dist = ProductDistribution::bernoulli_uniform(d, 0.05, 100 + d);
    const auto t = make_extreme_targets(dist);
    const double easy = mahalanobis2(dist, t.easy);
    const double hard = mahalanobis2(dist, t.hard);
    Vector z(d);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      for (Index j = 0; j < d; ++j) z[j] = (mask >> j) & 1u;
      const double v = mahalanobis2(dist, z);
      ASSERT_LE(v, easy * (1 + 1e-12)) << "d=" << d << " mask=" << mask;
      ASSERT_GE(v, hard * (1 - 1e-12)) << "d=" << d << " mask=" << mask;
    }
    // Closed form: sum_j max(p, 1-p) / min(p, 1-p).
    double closed = 0;
    for (Index j = 0; j < d; ++j) {
      const double q = dist.mean()[j];
      closed += std::max(q, 1 - q) / std::min(q, 1 - q);
    }
    EXPECT_NEAR(easy, closed, 1e-12 * closed);
  }
}

}  // namespace
}  // namespace miaudit
