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

#include <gtest/gtest.h>

#include <cmath>

namespace miaudit {
namespace {

TEST(EstimateReference, RepeatedVector) {
  const Vector v = (Vector(3) << 1.0, -2.0, 0.5).finished();
  const auto refs = estimate_reference(v.transpose().replicate(6, 1), {CovarianceMode::Full, false, 1e-3});
  EXPECT_TRUE(refs.mean().isApprox(v, 1e-15));
  const Matrix expected = v * v.transpose() + 1e-3 * Matrix::Identity(3, 3);
  EXPECT_TRUE(refs.covariance().isApprox(expected, 1e-12));
  EXPECT_EQ(refs.n0(), 6);
  EXPECT_THROW(estimate_reference(v.transpose()), ConfigError);
}

TEST(EstimateReference, StandardNormalSecondMoment) {
  const auto dist = ProductDistribution::gaussian(Vector::Zero(5), Vector::Ones(5));
  Engine rng = StreamFactory(81).stream(0);
  const auto refs = estimate_reference(dist.sample(10000, rng));
  EXPECT_LE((refs.covariance() - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff(), 0.05);
}

TEST(EstimateReference, CenteredSubtractsMeanOuterProduct) {
  const auto dist = ProductDistribution::gaussian(Vector::Constant(3, 2.0), Vector::Ones(3));
  Engine rng(82);
  const Matrix x = dist.sample(50, rng);
  const auto raw = estimate_reference(x, {CovarianceMode::Full, false, 0.0});
  const auto centred = estimate_reference(x, {CovarianceMode::Full, true, 0.0});
  const Vector mu = raw.mean();
  EXPECT_TRUE(centred.covariance().isApprox(raw.covariance() - mu * mu.transpose(), 1e-12));
  const auto diag = estimate_reference(x, {CovarianceMode::Diagonal, true, 0.0});
  EXPECT_TRUE(diag.covariance_diagonal().isApprox(centred.covariance().diagonal(), 1e-12));
}

TEST(EstimateReference, DefaultRidgeScalesWithTrace) {
  const Matrix x = (Matrix(3, 2) << 1, 0, 0, 2, 3, 1).finished();
  const auto refs = estimate_reference(x, {CovarianceMode::Diagonal, false, std::nullopt});
  const double trace = x.array().square().sum() / 3.0;
  EXPECT_DOUBLE_EQ(refs.ridge(), 1e-6 * trace / 2);
}

TEST(MahalanobisEst, Examples) {
  const auto dist = ProductDistribution::bernoulli_uniform(20, 0.25, 83);
  const auto exact = ReferenceEstimates::diagonal(dist.mean(), dist.variance(), 100, 0.0);
  const auto exact_full =
      ReferenceEstimates::full(dist.mean(), Matrix(dist.variance().asDiagonal()), 100, 0.0);
  EXPECT_EQ(mahalanobis_score_est(dist.mean(), exact), 0.0);
  Engine rng(83);
  for (int r = 0; r < 20; ++r) {
    const Vector x = dist.sample_point(rng);
    const double truth = mahalanobis2(dist, x);
    EXPECT_NEAR(mahalanobis_score_est(x, exact), truth, 1e-10 * truth);
    EXPECT_NEAR(mahalanobis_score_est(x, exact_full), truth, 1e-9 * truth);
  }
  const auto identity = ReferenceEstimates::full(Vector::Zero(4), Matrix::Identity(4, 4), 2, 0.0);
  const Vector x = (Vector(4) << 1, -2, 0.5, 3).finished();
  EXPECT_NEAR(mahalanobis_score_est(x, identity), x.squaredNorm(), 1e-12);
}

TEST(MahalanobisEst, RanksPaperTargets) {
  const auto dist = ProductDistribution::bernoulli_uniform(5000, 0.25, 20240521);
  const auto refs = ReferenceEstimates::diagonal(dist.mean(), dist.variance(), 0, 0.0);
  const auto t = make_extreme_targets(dist);
  Engine rng = StreamFactory(7).stream(0);
  const Vector med = dist.sample_point(rng);
  EXPECT_GT(mahalanobis_score_est(t.easy, refs), mahalanobis_score_est(med, refs));
  EXPECT_GT(mahalanobis_score_est(med, refs), mahalanobis_score_est(t.hard, refs));

  Matrix candidates(101, 5000);
  for (Index i = 0; i < 100; ++i) candidates.row(i) = dist.sample_point(rng).transpose();
  candidates.row(100) = t.easy.transpose();
  EXPECT_EQ(select_canary(candidates, refs).index, 100);
}

TEST(SelectCanary, Examples) {
  const auto refs = ReferenceEstimates::diagonal(Vector::Zero(2), Vector::Constant(2, 4.0), 10, 0.0);
  EXPECT_EQ(select_canary(Matrix::Ones(1, 2), refs).index, 0);
  const Matrix two = (Matrix(2, 2) << 0, 0, 6, 0).finished();
  const auto best = select_canary(two, refs);
  EXPECT_EQ(best.index, 1);
  EXPECT_DOUBLE_EQ(best.score, 9.0);
  const Matrix tie = (Matrix(3, 2) << 0, 1, 1, 0, 0, -1).finished();
  EXPECT_EQ(select_canary(tie, refs).index, 0);
  const auto ranked = rank_canaries(tie, refs);
  EXPECT_EQ(ranked[1].index, 1);
  EXPECT_EQ(ranked[2].index, 2);
  EXPECT_THROW(select_canary(Matrix(0, 2), refs), ConfigError);
  EXPECT_THROW(select_canary(Matrix::Ones(1, 3), refs), ConfigError);
}

TEST(SelectCanary, ArgmaxIsScaleEquivariant) {
  const auto dist = ProductDistribution::gaussian(Vector::Zero(6), Vector::Ones(6));
  Engine rng(84);
  const Matrix refs_rows = dist.sample(40, rng);
  const Matrix candidates = dist.sample(30, rng);
  for (double c : {0.001, 3.0, 1e4}) {
    const auto base = estimate_reference(refs_rows, {CovarianceMode::Full, false, 0.0});
    const auto scaled = estimate_reference(c * refs_rows, {CovarianceMode::Full, false, 0.0});
    const auto a = select_canary(candidates, base);
    const auto b = select_canary(c * candidates, scaled);
    EXPECT_EQ(a.index, b.index);
    EXPECT_NEAR(a.score, b.score, 1e-8 * a.score);
  }
}

TEST(SelectCanary, LargerRidgeNeverRaisesScores) {
  const auto dist = ProductDistribution::gaussian(Vector::Zero(8), Vector::Ones(8));
  Engine rng(85);
  const Matrix refs_rows = dist.sample(20, rng);
  const Matrix candidates = dist.sample(15, rng);
  for (auto mode : {CovarianceMode::Full, CovarianceMode::Diagonal}) {
    std::vector<double> last(15, std::numeric_limits<double>::infinity());
    for (double ridge : {1e-8, 1e-4, 1e-2}) {
      const auto refs = estimate_reference(refs_rows, {mode, false, ridge});
      for (Index k = 0; k < 15; ++k) {
        const double s = mahalanobis_score_est(candidates.row(k).transpose(), refs);
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, last[k] * (1 + 1e-12));
        last[k] = s;
      }
    }
  }
}

}  // namespace
}  // namespace miaudit
