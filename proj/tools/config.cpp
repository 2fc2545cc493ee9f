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


#include "config.hpp"

#include "io.hpp"

#include <cmath>
#include <memory>

namespace miaudit::cli {

namespace {

std::string quoted(std::string_view key) { return "'" + std::string(key) + "'"; }

}  // namespace

const json& need(const json& j, std::string_view key) {
  if (!j.is_object()) throw ConfigError("expected a JSON object holding " + quoted(key));
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError("missing config key " + quoted(key));
  return *it;
}

double need_number(const json& j, std::string_view key) {
  const json& v = need(j, key);
  if (!v.is_number()) throw ConfigError("config key " + quoted(key) + " must be a number");
  return v.get<double>();
}

Index need_count(const json& j, std::string_view key) {
  const json& v = need(j, key);
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<Index>();
  if (v.is_number_float() && v.get<double>() >= 0 && std::floor(v.get<double>()) == v.get<double>()) {
    return static_cast<Index>(v.get<double>());
  }
  throw ConfigError("config key " + quoted(key) + " must be a non-negative integer");
}

double number_or(const json& j, std::string_view key, double fallback) {
  return j.is_object() && j.contains(key) ? need_number(j, key) : fallback;
}

Index count_or(const json& j, std::string_view key, Index fallback) {
  return j.is_object() && j.contains(key) ? need_count(j, key) : fallback;
}

std::uint64_t seed_or(const json& j, std::string_view key, std::uint64_t fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError("config key " + quoted(key) + " must be a non-negative integer seed");
  }
  return v.get<std::uint64_t>();
}

std::string string_or(const json& j, std::string_view key, std::string fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("config key " + quoted(key) + " must be a string");
  return v.get<std::string>();
}

namespace {

Vector vector_of(const json& v, std::string_view key) {
  if (!v.is_array() || v.empty()) throw ConfigError("config key " + quoted(key) + " must be a non-empty array");
  Vector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError("config key " + quoted(key) + " must hold numbers");
    out[static_cast<Index>(i)] = v[i].get<double>();
  }
  return out;
}

}  // namespace

ProductDistribution parse_dist(const json& j) {
  if (j.is_object() && j.contains("columns")) {
    const json& cols = j.at("columns");
    if (!cols.is_array() || cols.empty()) throw ConfigError("'columns' must be a non-empty array");
    std::vector<ColumnLaw> laws;
    for (const json& c : cols) {
      const std::string law = need(c, "law").get<std::string>();
      if (law == "bernoulli") {
        laws.emplace_back(Bernoulli{need_number(c, "p")});
      } else if (law == "gaussian") {
        laws.emplace_back(Gaussian{need_number(c, "mean"), need_number(c, "var")});
      } else {
        throw ConfigError("unknown column law '" + law + "' (expected bernoulli or gaussian)");
      }
    }
    return ProductDistribution(std::move(laws));
  }
  const std::string law = string_or(j, "law", "");
  if (law == "bernoulli_uniform") {
    return ProductDistribution::bernoulli_uniform(need_count(j, "d"), need_number(j, "a"),
                                                  seed_or(j, "seed", 0));
  }
  if (law.empty()) need(j, "columns");  // reports the missing key
  throw ConfigError("unknown distribution law '" + law + "' (expected bernoulli_uniform or columns)");
}

Mechanism parse_mechanism(const json& config, Index d) {
  const json& m = need(config, "mechanism");
  const json& params = m.is_object() ? m : config;
  const std::string name = m.is_object() ? need(m, "mechanism").get<std::string>()
                                         : m.get<std::string>();
  if (name == "empirical_mean") return Mechanism::empirical_mean();
  if (name == "noisy_mean") {
    if (params.contains("gamma")) {
      Vector gamma = vector_of(params.at("gamma"), "gamma");
      require_same_dim(gamma.size(), d, "noisy_mean gamma");
      return Mechanism::noisy_mean(std::move(gamma));
    }
    return Mechanism::noisy_mean(need_number(params, "gamma_scalar"), d);
  }
  if (name == "subsampled_mean") return Mechanism::subsampled_mean(need_number(params, "rho"));
  throw ConfigError("unknown mechanism '" + name +
                    "' (expected empirical_mean, noisy_mean or subsampled_mean)");
}

Vector parse_point(const json& spec, const ProductDistribution& dist, std::uint64_t seed) {
  if (spec.is_array()) {
    Vector z = vector_of(spec, "target");
    require_same_dim(z.size(), dist.dim(), "target point");
    return z;
  }
  std::string kind;
  if (spec.is_object()) {
    kind = need(spec, "kind").get<std::string>();
    seed = seed_or(spec, "seed", seed);
  } else if (spec.is_string()) {
    kind = spec.get<std::string>();
  } else {
    throw ConfigError("a target must be a name, an array or an object");
  }
  if (kind == "easy") return make_extreme_targets(dist).easy;
  if (kind == "hard") return make_extreme_targets(dist).hard;
  if (kind == "medium" || kind == "random") {
    Engine rng = StreamFactory(seed).stream(0);
    return dist.sample_point(rng);
  }
  throw ConfigError("unknown target '" + kind + "' (expected easy, hard, medium or an array)");
}

ReferenceOptions parse_reference_options(const json& j) {
  ReferenceOptions opts;
  const std::string mode = string_or(j, "mode", "full");
  if (mode == "full") {
    opts.mode = CovarianceMode::Full;
  } else if (mode == "diagonal") {
    opts.mode = CovarianceMode::Diagonal;
  } else {
    throw ConfigError("unknown covariance mode '" + mode + "' (expected full or diagonal)");
  }
  if (j.is_object() && j.contains("centered")) {
    if (!j.at("centered").is_boolean()) throw ConfigError("config key 'centered' must be a boolean");
    opts.centered = j.at("centered").get<bool>();
  }
  if (j.is_object() && j.contains("ridge")) opts.ridge = need_number(j, "ridge");
  return opts;
}

ScoreSideInfo parse_side_info(const json& config, std::string_view score,
                              const ProductDistribution& dist, const Mechanism& mech, Index n) {
  ScoreSideInfo info;
  info.n = n;
  info.mech = mech;
  info.oracle = OracleMoments::of(dist);
  const json side = config.contains("side_info") ? config.at("side_info") : json::object();
  if (score == "scalar_product") {
    const json spec = side.contains("z_ref") ? side.at("z_ref") : json("random");
    info.z_ref = parse_point(spec, dist, seed_or(side, "z_ref_seed", 0));
  }
  if (score == "lr_misspecified") {
    info.z_targ = parse_point(need(side, "z_targ"), dist, seed_or(side, "z_targ_seed", 0));
  }
  if (score == "lr_empirical_cov") {
    const json& ref = need(side, "reference");
    const Index n0 = need_count(ref, "n0");
    Engine rng = StreamFactory(seed_or(ref, "seed", 0)).stream(0);
    const Matrix refs = dist.sample(n0, rng);
    info.refs = std::make_shared<const ReferenceEstimates>(
        estimate_reference(refs, parse_reference_options(ref)));
  }
  return info;
}

std::string config_hash(const json& config) { return hex64(fnv1a(config.dump())); }

}  // namespace miaudit::cli
