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

#include <vector>

namespace miaudit {

/// Standard normal CDF.
double phi(double x);

/// Standard normal quantile; phi_inv(0) = -inf, phi_inv(1) = +inf.
double phi_inv(double p);

/// Bayes advantage Phi(sqrt(m)/2) - Phi(-sqrt(m)/2).
double theoretical_leakage(double m);

/// Optimal power Phi(Phi^{-1}(alpha) + sqrt(m)).
double theoretical_power(double m, double alpha);

/// Threshold -m/2 + sqrt(m) Phi^{-1}(1 - alpha) achieving theoretical_power.
double optimal_threshold(double m, double alpha);

/// (1/n) |z - mu|^2 over (C_sigma + C_gamma)^{-1}.
double noisy_leakage_score(const ProductDistribution& dist, const VectorRef& z,
                           const VectorRef& gamma, Index n);

inline double subsampled_leakage_score(double m, double rho) { return rho * m; }

/// (1/n) (z_targ - mu)^T C_sigma^{-1} (z_star - mu).
double cross_leakage(const ProductDistribution& dist, const VectorRef& z_targ,
                     const VectorRef& z_star, Index n);

/// Advantage of the LR test built for a misspecified target. Zero when
/// m_targ = 0 (the score is then constant).
double misspec_advantage(double m_scal, double m_targ);

/// delta(eps) of a sqrt(m)-GDP mechanism, clamped to [0, 1].
double gdp_delta(double m, double epsilon);

/// Total variation between N(mu0, sigma^2) and N(mu1, sigma^2).
double tv_gaussians(double mu0, double mu1, double sigma);

struct TradeoffPoint {
  double alpha;
  double power;
};

struct TradeoffCurve {
  double m_eff = 0.0;
  std::vector<TradeoffPoint> samples;
};

inline constexpr int kDefaultAlphaGridSize = 512;

/// `size` evenly spaced points on [0, 1], endpoints included.
std::vector<double> alpha_grid(int size = kDefaultAlphaGridSize);

TradeoffCurve tradeoff_curve(double m_eff, int grid_size = kDefaultAlphaGridSize);

}  // namespace miaudit
