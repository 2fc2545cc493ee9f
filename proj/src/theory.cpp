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

#include "miaudit/theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace miaudit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Acklam's rational approximation of the normal quantile (relative error
// about 1.2e-9 before refinement).
double acklam_quantile(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double phi_inv(double p) {
  require(p >= 0.0 && p <= 1.0, "phi_inv needs p in [0,1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  // Work in the lower tail, where phi() keeps full relative precision.
  if (p > 0.5) return -phi_inv(1.0 - p);
  double x = acklam_quantile(p);
  const double pdf = normal_pdf(x);
  if (pdf > 0.0) x -= (phi(x) - p) / pdf;
  return x;
}

double theoretical_leakage(double m) {
  require(m >= 0.0, "leakage score must be >= 0");
  const double h = std::sqrt(m) / 2.0;
  return phi(h) - phi(-h);
}

double theoretical_power(double m, double alpha) {
  require(m >= 0.0, "leakage score must be >= 0");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  if (alpha == 0.0) return 0.0;
  if (alpha == 1.0) return 1.0;
  if (m == 0.0) return alpha;  // blind test
  return phi(phi_inv(alpha) + std::sqrt(m));
}

double optimal_threshold(double m, double alpha) {
  require(m >= 0.0, "leakage score must be >= 0");
  require(alpha >= 0.0 && alpha <= 1.0, "alpha must lie in [0,1]");
  return -m / 2.0 + std::sqrt(m) * phi_inv(1.0 - alpha);
}

double noisy_leakage_score(const ProductDistribution& dist, const VectorRef& z,
                           const VectorRef& gamma, Index n) {
  require_same_dim(z.size(), dist.dim(), "noisy_leakage_score(z)");
  require_same_dim(gamma.size(), dist.dim(), "noisy_leakage_score(gamma)");
  require(n >= 1, "noisy_leakage_score needs n >= 1");
  const auto var = dist.variance().array() + gamma.array().square();
  return ((z - dist.mean()).array().square() / var).sum() / static_cast<double>(n);
}

double cross_leakage(const ProductDistribution& dist, const VectorRef& z_targ,
                     const VectorRef& z_star, Index n) {
  require_same_dim(z_targ.size(), dist.dim(), "cross_leakage(z_targ)");
  require_same_dim(z_star.size(), dist.dim(), "cross_leakage(z_star)");
  require(n >= 1, "cross_leakage needs n >= 1");
  const auto& mu = dist.mean();
  return ((z_targ - mu).array() * (z_star - mu).array() / dist.variance().array()).sum() /
         static_cast<double>(n);
}

double misspec_advantage(double m_scal, double m_targ) {
  require(m_targ >= 0.0, "m_targ must be >= 0");
  if (m_targ == 0.0) return 0.0;
  const double h = std::abs(m_scal) / (2.0 * std::sqrt(m_targ));
  return phi(h) - phi(-h);
}

double gdp_delta(double m, double epsilon) {
  require(m >= 0.0, "gdp_delta needs m >= 0");
  require(epsilon >= 0.0, "gdp_delta needs epsilon >= 0");
  if (m == 0.0 || std::isinf(epsilon)) return 0.0;
  const double s = std::sqrt(m);
  const double first = phi(-epsilon / s + s / 2.0);
  const double tail = phi(-epsilon / s - s / 2.0);
  const double second = tail > 0.0 ? std::exp(epsilon + std::log(tail)) : 0.0;
  return std::clamp(first - second, 0.0, 1.0);
}

double tv_gaussians(double mu0, double mu1, double sigma) {
  require(sigma > 0.0, "tv_gaussians needs sigma > 0");
  const double h = std::abs(mu0 - mu1) / (2.0 * sigma);
  return phi(h) - phi(-h);
}

std::vector<double> alpha_grid(int size) {
  require(size >= 2, "alpha grid needs at least two points");
  std::vector<double> grid(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) grid[i] = static_cast<double>(i) / (size - 1);
  return grid;
}

TradeoffCurve tradeoff_curve(double m_eff, int grid_size) {
  TradeoffCurve curve;
  curve.m_eff = m_eff;
  for (double a : alpha_grid(grid_size)) curve.samples.push_back({a, theoretical_power(m_eff, a)});
  return curve;
}

}  // namespace miaudit
