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
#include "miaudit/dist.hpp"

#include <optional>

namespace miaudit {

/// True mean and per-column variance, as side information for oracle attacks.
struct OracleMoments {
  Vector mu;
  Vector sigma2;

  OracleMoments(Vector mu_, Vector sigma2_);
  static OracleMoments of(const ProductDistribution& dist) {
    return OracleMoments(dist.mean(), dist.variance());
  }
};

enum class CovarianceMode { Diagonal, Full };

/// Reference mean mu0 and second-moment matrix C0 with its factorization.
///
/// Construction adds `ridge` to the diagonal and factors once (LLT for the
/// full form); every later score is a pair of triangular solves. When no
/// ridge is given the default 1e-6 * trace(C0) / d is used. Immutable, so one
/// instance can be shared by concurrently running game rounds.
class ReferenceEstimates {
 public:
  static ReferenceEstimates diagonal(Vector mu0, Vector c0_diag, Index n0,
                                     std::optional<double> ridge = std::nullopt);
  static ReferenceEstimates full(Vector mu0, Matrix c0, Index n0,
                                 std::optional<double> ridge = std::nullopt);

  [[nodiscard]] Index dim() const { return mu0_.size(); }
  [[nodiscard]] const Vector& mean() const { return mu0_; }
  [[nodiscard]] CovarianceMode mode() const { return mode_; }
  [[nodiscard]] Index n0() const { return n0_; }
  [[nodiscard]] double ridge() const { return ridge_; }
  /// Ridged diagonal (diagonal mode) or ridged matrix diagonal (full mode).
  [[nodiscard]] Vector covariance_diagonal() const;
  /// Ridged C0 (dense). Diagonal mode materializes it.
  [[nodiscard]] Matrix covariance() const;

  /// L^{-1} v where C0 + ridge*I = L L^T.
  [[nodiscard]] Vector whiten(const VectorRef& v) const;
  /// (C0 + ridge*I)^{-1} v.
  [[nodiscard]] Vector solve(const VectorRef& v) const;
  /// (x - mu0)^T C0^{-1} (x - mu0).
  [[nodiscard]] double mahalanobis2(const VectorRef& x) const;

 private:
  ReferenceEstimates() = default;

  Vector mu0_;
  CovarianceMode mode_ = CovarianceMode::Diagonal;
  Index n0_ = 0;
  double ridge_ = 0.0;
  Vector diag_;                 // diagonal mode
  Eigen::LLT<Matrix> llt_;      // full mode

  friend double lr_empirical_cov(const VectorRef&, const VectorRef&, const ReferenceEstimates&,
                                 Index);
};

/// Exact log-likelihood ratio of the empirical mean of Bernoulli columns.
/// Coordinates whose log argument vanishes make the score -infinity.
double lr_exact_bernoulli(const VectorRef& mu_hat, const VectorRef& z, const VectorRef& mu);

/// (z - mu)^T C^{-1} (mu_hat - mu) - |z - mu|^2_{C^{-1}} / (2n), diagonal C.
double lr_asymptotic(const VectorRef& mu_hat, const VectorRef& z, const OracleMoments& om,
                     Index n);

/// lr_asymptotic with (mu, C) replaced by reference estimates (mu0, C0).
double lr_empirical_cov(const VectorRef& mu_hat, const VectorRef& z,
                        const ReferenceEstimates& refs, Index n);

/// (z - z_ref)^T mu_hat.
double scalar_product(const VectorRef& mu_hat, const VectorRef& z, const VectorRef& z_ref);

/// lr_asymptotic against the noisy mean: sigma^2 -> sigma^2 + gamma^2.
double lr_noisy(const VectorRef& mu_hat, const VectorRef& z, const OracleMoments& om,
                const VectorRef& gamma, Index n);

/// Quadratic expansion of the sub-sampled LR score (third-cumulant term dropped).
double lr_subsampled(const VectorRef& mu_hat_sub, const VectorRef& z, const OracleMoments& om,
                     double rho, Index n);

/// The oracle LR test built for `z_targ`, whatever the true target is.
inline double lr_misspecified(const VectorRef& mu_hat, const VectorRef& z_targ,
                              const OracleMoments& om, Index n) {
  return lr_asymptotic(mu_hat, z_targ, om, n);
}

}  // namespace miaudit
