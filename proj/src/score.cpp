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

#include "miaudit/score.hpp"

#include "miaudit/mech.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace miaudit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Shared by lr_asymptotic, lr_noisy and the diagonal lr_empirical_cov path so
// that identical inputs give bit-identical scores.
double diagonal_lr(const VectorRef& mu_hat, const VectorRef& z, const VectorRef& center,
                   const VectorRef& var, Index n) {
  double cross = 0.0;
  double quad = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    const double a = z[j] - center[j];
    const double w = a / var[j];
    cross += w * (mu_hat[j] - center[j]);
    quad += w * a;
  }
  return cross - quad / (2.0 * static_cast<double>(n));
}

double default_ridge(double trace, Index d) { return 1e-6 * trace / static_cast<double>(d); }

}  // namespace

OracleMoments::OracleMoments(Vector mu_, Vector sigma2_) : mu(std::move(mu_)), sigma2(std::move(sigma2_)) {
  require_same_dim(mu.size(), sigma2.size(), "OracleMoments");
  require((sigma2.array() > 0.0).all(), "oracle variances must be positive");
}

ReferenceEstimates ReferenceEstimates::diagonal(Vector mu0, Vector c0_diag, Index n0,
                                                std::optional<double> ridge) {
  require_same_dim(mu0.size(), c0_diag.size(), "ReferenceEstimates::diagonal");
  require(mu0.size() >= 1, "reference estimates need d >= 1");
  ReferenceEstimates r;
  r.mode_ = CovarianceMode::Diagonal;
  r.n0_ = n0;
  r.ridge_ = ridge.value_or(default_ridge(c0_diag.sum(), c0_diag.size()));
  require(r.ridge_ >= 0.0, "ridge must be >= 0");
  r.diag_ = c0_diag.array() + r.ridge_;
  Index argmin = 0;
  const double smallest = r.diag_.minCoeff(&argmin);
  if (!(smallest > 0.0)) {
    std::ostringstream msg;
    msg << "reference covariance is not positive definite after ridge " << r.ridge_
        << "; smallest eigenvalue estimate " << smallest << " at coordinate " << argmin;
    throw NumericalError(msg.str());
  }
  r.mu0_ = std::move(mu0);
  return r;
}

ReferenceEstimates ReferenceEstimates::full(Vector mu0, Matrix c0, Index n0,
                                            std::optional<double> ridge) {
  require(c0.rows() == c0.cols(), "reference covariance must be square");
  require_same_dim(mu0.size(), c0.rows(), "ReferenceEstimates::full");
  require(mu0.size() >= 1, "reference estimates need d >= 1");
  const double asym = (c0 - c0.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-9 * std::max(1.0, c0.cwiseAbs().maxCoeff()),
          "reference covariance must be symmetric");
  ReferenceEstimates r;
  r.mode_ = CovarianceMode::Full;
  r.n0_ = n0;
  r.ridge_ = ridge.value_or(default_ridge(c0.trace(), c0.rows()));
  require(r.ridge_ >= 0.0, "ridge must be >= 0");
  c0.diagonal().array() += r.ridge_;
  r.llt_.compute(c0);
  if (r.llt_.info() != Eigen::Success) {
    const double smallest =
        Eigen::SelfAdjointEigenSolver<Matrix>(c0, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    std::ostringstream msg;
    msg << "Cholesky factorization of reference covariance failed after ridge " << r.ridge_
        << "; smallest eigenvalue estimate " << smallest;
    throw NumericalError(msg.str());
  }
  r.mu0_ = std::move(mu0);
  return r;
}

Vector ReferenceEstimates::covariance_diagonal() const {
  if (mode_ == CovarianceMode::Diagonal) return diag_;
  return covariance().diagonal();
}

Matrix ReferenceEstimates::covariance() const {
  if (mode_ == CovarianceMode::Diagonal) return diag_.asDiagonal();
  return llt_.reconstructedMatrix();
}

Vector ReferenceEstimates::whiten(const VectorRef& v) const {
  require_same_dim(v.size(), dim(), "ReferenceEstimates::whiten");
  if (mode_ == CovarianceMode::Diagonal) return v.array() / diag_.array().sqrt();
  return llt_.matrixL().solve(v);
}

Vector ReferenceEstimates::solve(const VectorRef& v) const {
  require_same_dim(v.size(), dim(), "ReferenceEstimates::solve");
  if (mode_ == CovarianceMode::Diagonal) return v.array() / diag_.array();
  return llt_.solve(v);
}

double ReferenceEstimates::mahalanobis2(const VectorRef& x) const {
  require_same_dim(x.size(), dim(), "ReferenceEstimates::mahalanobis2");
  if (mode_ == CovarianceMode::Diagonal) {
    return ((x - mu0_).array().square() / diag_.array()).sum();
  }
  return whiten(x - mu0_).squaredNorm();
}

double lr_exact_bernoulli(const VectorRef& mu_hat, const VectorRef& z, const VectorRef& mu) {
  require_same_dim(mu_hat.size(), mu.size(), "lr_exact_bernoulli(mu_hat)");
  require_same_dim(z.size(), mu.size(), "lr_exact_bernoulli(z)");
  double score = 0.0;
  for (Index j = 0; j < mu.size(); ++j) {
    require(mu[j] > 0.0 && mu[j] < 1.0, "lr_exact_bernoulli needs every mu_j in (0,1)");
    require(z[j] == 0.0 || z[j] == 1.0, "lr_exact_bernoulli needs a binary target");
    require(mu_hat[j] >= 0.0 && mu_hat[j] <= 1.0, "lr_exact_bernoulli needs mu_hat in [0,1]");
    const double num = z[j] == 1.0 ? mu_hat[j] : 1.0 - mu_hat[j];
    const double den = z[j] == 1.0 ? mu[j] : 1.0 - mu[j];
    score += num == 0.0 ? kNegInf : std::log(num / den);
  }
  return score;
}

double lr_asymptotic(const VectorRef& mu_hat, const VectorRef& z, const OracleMoments& om,
                     Index n) {
  require_same_dim(mu_hat.size(), om.mu.size(), "lr_asymptotic(mu_hat)");
  require_same_dim(z.size(), om.mu.size(), "lr_asymptotic(z)");
  require(n >= 1, "lr_asymptotic needs n >= 1");
  return diagonal_lr(mu_hat, z, om.mu, om.sigma2, n);
}

double lr_empirical_cov(const VectorRef& mu_hat, const VectorRef& z,
                        const ReferenceEstimates& refs, Index n) {
  require_same_dim(mu_hat.size(), refs.dim(), "lr_empirical_cov(mu_hat)");
  require_same_dim(z.size(), refs.dim(), "lr_empirical_cov(z)");
  require(n >= 1, "lr_empirical_cov needs n >= 1");
  if (refs.mode() == CovarianceMode::Diagonal) {
    return diagonal_lr(mu_hat, z, refs.mu0_, refs.diag_, n);
  }
  const Vector a = refs.whiten(z - refs.mu0_);
  const Vector b = refs.whiten(mu_hat - refs.mu0_);
  return a.dot(b) - a.squaredNorm() / (2.0 * static_cast<double>(n));
}

double scalar_product(const VectorRef& mu_hat, const VectorRef& z, const VectorRef& z_ref) {
  require_same_dim(z.size(), mu_hat.size(), "scalar_product(z)");
  require_same_dim(z_ref.size(), mu_hat.size(), "scalar_product(z_ref)");
  return (z - z_ref).dot(mu_hat);
}

double lr_noisy(const VectorRef& mu_hat, const VectorRef& z, const OracleMoments& om,
                const VectorRef& gamma, Index n) {
  require_same_dim(gamma.size(), om.mu.size(), "lr_noisy(gamma)");
  require_same_dim(mu_hat.size(), om.mu.size(), "lr_noisy(mu_hat)");
  require_same_dim(z.size(), om.mu.size(), "lr_noisy(z)");
  require(n >= 1, "lr_noisy needs n >= 1");
  const Vector var = om.sigma2.array() + gamma.array().square();
  return diagonal_lr(mu_hat, z, om.mu, var, n);
}

double lr_subsampled(const VectorRef& mu_hat_sub, const VectorRef& z, const OracleMoments& om,
                     double rho, Index n) {
  require_same_dim(mu_hat_sub.size(), om.mu.size(), "lr_subsampled(mu_hat)");
  require_same_dim(z.size(), om.mu.size(), "lr_subsampled(z)");
  const Index k_n = subsample_size(rho, n);
  require(k_n >= 2, "lr_subsampled needs k_n = round(rho n) >= 2");
  const double k = static_cast<double>(k_n);
  const double sqrt_k = std::sqrt(k);
  const double in_scale = k / std::sqrt(k - 1.0);
  const double quartic = rho * (1.0 - rho) / 8.0;
  const double offset = rho / (2.0 * k);
  double score = 0.0;
  for (Index j = 0; j < z.size(); ++j) {
    const double sigma = std::sqrt(om.sigma2[j]);
    const double centred = mu_hat_sub[j] - om.mu[j];
    const double out = sqrt_k * centred / sigma;
    const double in = in_scale * (centred + (om.mu[j] - z[j]) / k) / sigma;
    const double diff = out * out - in * in;
    score += 0.5 * rho * diff + quartic * diff * diff + offset;
  }
  return score;
}

}  // namespace miaudit
