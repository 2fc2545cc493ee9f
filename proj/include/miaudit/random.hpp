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

#include <cmath>
#include <cstdint>
#include <random>

namespace miaudit {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer; used to key independent streams.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Hands out reproducible, independent engines keyed by (master_seed, index).
///
/// Stream `i` depends only on the master seed and `i`, never on the order in
/// which streams are requested, so round `t` of a game sees the same draws
/// whether rounds run serially or on any number of threads.
class StreamFactory {
 public:
  explicit StreamFactory(std::uint64_t master_seed) : master_seed_(master_seed) {}

  [[nodiscard]] Engine stream(std::uint64_t index) const {
    const std::uint64_t a = mix64(master_seed_);
    const std::uint64_t b = mix64(a ^ mix64(index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Engine(seq);
  }

  /// A child factory for a named sub-purpose (e.g. reference sampling).
  [[nodiscard]] StreamFactory fork(std::uint64_t tag) const {
    return StreamFactory(mix64(master_seed_ ^ mix64(~tag)));
  }

  [[nodiscard]] std::uint64_t master_seed() const { return master_seed_; }

 private:
  std::uint64_t master_seed_;
};

/// Threshold t such that a uniform 32-bit word u satisfies u < t with
/// probability floor(p * 2^32) / 2^32. Each 64-bit engine output supplies two
/// such words. p is assumed to lie in [0, 1).
inline std::uint32_t bernoulli_threshold(double p) {
  if (p <= 0.0) return 0;
  return static_cast<std::uint32_t>(std::ldexp(p, 32));
}

}  // namespace miaudit
