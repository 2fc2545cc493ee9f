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

#include "miaudit/game.hpp"

#include "miaudit/parallel.hpp"

#include <algorithm>
#include <string>

namespace miaudit {

namespace {

// Releases mech(D) for a dataset whose row `replaced` (when >= 0) holds
// `target` and whose other entries are fresh draws. With `own_target` the
// replaced row is itself a fresh draw and is written back into `target`.
// Draw order: row selection, then columns 0..d-1, then mechanism noise.
Vector release(const ProductDistribution& dist, const Mechanism& mech, Sampling sampling,
               Index replaced, Vector& target, bool own_target, std::vector<double>& column,
               Engine& rng) {
  const auto n = static_cast<Index>(column.size());
  const auto rows = mech.select_rows(n, rng);
  const Index count = rows.empty() ? n : static_cast<Index>(rows.size());
  const bool kept = replaced >= 0 && (rows.empty() ||
                                      std::binary_search(rows.begin(), rows.end(), replaced));
  const auto at = static_cast<std::size_t>(replaced);
  Vector out(dist.dim());
  for (Index j = 0; j < dist.dim(); ++j) {
    if (sampling == Sampling::Rows) {
      dist.sample_column(j, column, rng);
      if (replaced >= 0) {
        if (own_target) {
          target[j] = column[at];
        } else {
          column[at] = target[j];
        }
      }
      out[j] = Mechanism::reduce(column.data(), n, rows);
      continue;
    }
    if (own_target && replaced >= 0) target[j] = dist.sample_column_sum(j, 1, rng);
    double sum = dist.sample_column_sum(j, kept ? count - 1 : count, rng);
    if (kept) sum += target[j];
    out[j] = sum / static_cast<double>(count);
  }
  mech.add_noise(out, n, rng);
  return out;
}

Crafted craft_round(const ProductDistribution& dist, const Mechanism& mech, Sampling sampling,
                    Vector& target, std::vector<double>& column, Engine& rng) {
  std::bernoulli_distribution coin(0.5);
  const bool member = coin(rng);
  Index replaced = -1;
  if (member) {
    replaced = std::uniform_int_distribution<Index>(0, static_cast<Index>(column.size()) - 1)(rng);
  }
  return {release(dist, mech, sampling, replaced, target, false, column, rng), member};
}

template <class Error>
[[noreturn]] void rethrow_with_round(const Error& e, Index round) {
  throw Error("round " + std::to_string(round) + ": " + e.what());
}

template <class Body>
void run_round(Index round, Body&& body) {
  try {
    body();
  } catch (const ConfigError& e) {
    rethrow_with_round(e, round);
  } catch (const NumericalError& e) {
    rethrow_with_round(e, round);
  }
}

void check_mechanism(const Mechanism& mech, Index d) {
  if (const auto* noisy = mech.as<NoisyMean>()) {
    require_same_dim(noisy->gamma.size(), d, "noisy_mean gamma");
  }
}

}  // namespace

Crafted craft(const ProductDistribution& dist, const Mechanism& mech, Index n, const VectorRef& z,
              Engine& rng, Sampling sampling) {
  require(n >= 1, "craft needs n >= 1");
  require_same_dim(z.size(), dist.dim(), "craft target");
  check_mechanism(mech, dist.dim());
  std::vector<double> column(static_cast<std::size_t>(n));
  Vector target = z;
  return craft_round(dist, mech, sampling, target, column, rng);
}

std::vector<std::vector<ScoredRound>> run_fixed_game(const GameConfig& cfg,
                                                     std::span<const Scorer> scorers) {
  require(cfg.rounds >= 1, "game needs at least one round");
  require(cfg.n >= 1, "game needs n >= 1");
  require(!scorers.empty(), "game needs at least one scorer");
  require_same_dim(cfg.target.size(), cfg.dist.dim(), "game target");
  check_mechanism(cfg.mech, cfg.dist.dim());

  const StreamFactory streams(cfg.master_seed);
  std::vector<std::vector<ScoredRound>> out(scorers.size(),
                                            std::vector<ScoredRound>(cfg.rounds));
  parallel_for(cfg.rounds, cfg.threads, [&](Index begin, Index end) {
    std::vector<double> column(static_cast<std::size_t>(cfg.n));
    Vector target = cfg.target;
    for (Index t = begin; t < end; ++t) {
      run_round(t, [&] {
        Engine rng = streams.stream(static_cast<std::uint64_t>(t));
        const Crafted c = craft_round(cfg.dist, cfg.mech, cfg.sampling, target, column, rng);
        for (std::size_t k = 0; k < scorers.size(); ++k) {
          out[k][t] = {scorers[k](c.output, cfg.target), c.member};
        }
      });
    }
  });
  return out;
}

std::vector<ScoredRound> run_fixed_game(const GameConfig& cfg, const Scorer& scorer) {
  return std::move(run_fixed_game(cfg, std::span<const Scorer>(&scorer, 1)).front());
}

std::vector<ScoredRound> run_average_game(const ProductDistribution& dist, const Mechanism& mech,
                                          Index n, const Scorer& scorer, Index rounds,
                                          std::uint64_t master_seed, unsigned threads,
                                          Sampling sampling) {
  require(rounds >= 1, "game needs at least one round");
  require(n >= 1, "game needs n >= 1");
  check_mechanism(mech, dist.dim());
  const StreamFactory streams(master_seed);
  std::vector<ScoredRound> out(rounds);
  parallel_for(rounds, threads, [&](Index begin, Index end) {
    std::vector<double> column(static_cast<std::size_t>(n));
    for (Index t = begin; t < end; ++t) {
      run_round(t, [&] {
        Engine rng = streams.stream(static_cast<std::uint64_t>(t));
        std::bernoulli_distribution coin(0.5);
        const bool member = coin(rng);
        Index replaced = -1;
        if (member) replaced = std::uniform_int_distribution<Index>(0, n - 1)(rng);
        Vector target(dist.dim());
        const Vector output = release(dist, mech, sampling, replaced, target, true, column, rng);
        if (!member) target = dist.sample_point(rng);
        out[t] = {scorer(output, target), member};
      });
    }
  });
  return out;
}

}  // namespace miaudit
