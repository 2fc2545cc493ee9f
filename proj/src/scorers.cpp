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

#include "miaudit/scorers.hpp"

#include <array>
#include <string>

namespace miaudit {

namespace {

constexpr std::array<std::string_view, 7> kNames{
    "lr_exact_bernoulli", "lr_asymptotic", "lr_empirical_cov", "scalar_product",
    "lr_noisy",           "lr_subsampled", "lr_misspecified"};

std::string joined_names() {
  std::string out;
  for (auto n : kNames) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

const OracleMoments& need_oracle(const ScoreSideInfo& info, std::string_view name) {
  if (!info.oracle) {
    throw ConfigError(std::string(name) + " needs the true moments of the distribution");
  }
  return *info.oracle;
}

}  // namespace

std::span<const std::string_view> score_names() { return kNames; }

Scorer make_scorer(std::string_view name, const ScoreSideInfo& info) {
  const Index n = info.n;
  require(n >= 1, "scorer needs n >= 1");

  if (name == "lr_exact_bernoulli") {
    const Vector mu = need_oracle(info, name).mu;
    return [mu](const Vector& o, const Vector& z) { return lr_exact_bernoulli(o, z, mu); };
  }
  if (name == "lr_asymptotic") {
    OracleMoments om = need_oracle(info, name);
    return [om, n](const Vector& o, const Vector& z) { return lr_asymptotic(o, z, om, n); };
  }
  if (name == "lr_empirical_cov") {
    if (!info.refs) throw ConfigError("lr_empirical_cov needs reference estimates");
    auto refs = info.refs;
    return [refs, n](const Vector& o, const Vector& z) { return lr_empirical_cov(o, z, *refs, n); };
  }
  if (name == "scalar_product") {
    if (!info.z_ref) throw ConfigError("scalar_product needs a reference point z_ref");
    Vector z_ref = *info.z_ref;
    return [z_ref](const Vector& o, const Vector& z) { return scalar_product(o, z, z_ref); };
  }
  if (name == "lr_noisy") {
    OracleMoments om = need_oracle(info, name);
    const auto* noisy = info.mech.as<NoisyMean>();
    if (!noisy) throw ConfigError("lr_noisy needs a noisy_mean mechanism");
    Vector gamma = noisy->gamma;
    return [om, gamma, n](const Vector& o, const Vector& z) {
      return lr_noisy(o, z, om, gamma, n);
    };
  }
  if (name == "lr_subsampled") {
    OracleMoments om = need_oracle(info, name);
    const auto* sub = info.mech.as<SubsampledMean>();
    const double rho = sub ? sub->rho : 1.0;
    require(subsample_size(rho, n) >= 2, "lr_subsampled needs k_n = round(rho n) >= 2");
    return [om, rho, n](const Vector& o, const Vector& z) {
      return lr_subsampled(o, z, om, rho, n);
    };
  }
  if (name == "lr_misspecified") {
    OracleMoments om = need_oracle(info, name);
    if (!info.z_targ) throw ConfigError("lr_misspecified needs a misspecified target z_targ");
    Vector z_targ = *info.z_targ;
    return [om, z_targ, n](const Vector& o, const Vector&) {
      return lr_misspecified(o, z_targ, om, n);
    };
  }
  throw ConfigError("unknown score '" + std::string(name) + "'; valid names: " + joined_names());
}

}  // namespace miaudit
