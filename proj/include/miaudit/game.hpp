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

#include "miaudit/dist.hpp"
#include "miaudit/mech.hpp"
#include "miaudit/roc.hpp"
#include "miaudit/scorers.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace miaudit {

inline constexpr Index kDefaultRounds = 1000;

struct Crafted {
  Vector output;
  bool member;
};

/// How the crafter realizes the dataset D.
///
/// Rows draws all n*d entries, one column at a time. Sums draws, for each
/// column, the sum over the rows the mechanism keeps directly from its exact
/// law (binomial or normal) and adds the target's entry when its row is kept.
/// Every supported mechanism reads D only through those sums, so both give
/// the same output distribution; Sums is far cheaper at large n*d.
enum class Sampling { Sums, Rows };

/// One crafter draw: D ~ dist^n, b ~ Bernoulli(1/2), on b = 1 a uniformly
/// chosen row is replaced by z, then o = mech(D).
Crafted craft(const ProductDistribution& dist, const Mechanism& mech, Index n,
              const VectorRef& z, Engine& rng, Sampling sampling = Sampling::Rows);

struct GameConfig {
  ProductDistribution dist;
  Mechanism mech;
  Index n = 1;
  Vector target;
  Index rounds = kDefaultRounds;
  std::uint64_t master_seed = 0;
  unsigned threads = 0;  // 0 = all hardware threads
  Sampling sampling = Sampling::Sums;
};

/// Fixed-target game. Round t draws from stream t of the master seed, so the
/// transcript does not depend on the thread count.
std::vector<ScoredRound> run_fixed_game(const GameConfig& cfg, const Scorer& scorer);

/// Same rounds scored by several attacks at once; result[k] belongs to scorers[k].
std::vector<std::vector<ScoredRound>> run_fixed_game(const GameConfig& cfg,
                                                     std::span<const Scorer> scorers);

/// Average-target game: on b = 0 the target is a fresh draw from dist, on
/// b = 1 it is a uniformly chosen row of the dataset.
std::vector<ScoredRound> run_average_game(const ProductDistribution& dist, const Mechanism& mech,
                                          Index n, const Scorer& scorer, Index rounds,
                                          std::uint64_t master_seed, unsigned threads = 0,
                                          Sampling sampling = Sampling::Sums);

}  // namespace miaudit
