//
// Copyright 2026 The oride-triangulation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef ORIDE_RNG_HPP_
#define ORIDE_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace oride {

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distributions below are hand-rolled so that draws are identical
// across standard library implementations.
using Rng = std::mt19937_64;

// Stream tags for seed derivation. Adversary streams use the adversary index.
inline constexpr std::uint64_t kDriverStream = 0xD21E'0000'0000'0001ULL;
inline constexpr std::uint64_t kScenarioStream = 0x5CE7'0000'0000'0002ULL;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Derives an independent substream seed from (master seed, trial, stream).
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial,
                                           std::uint64_t stream) {
  return splitmix64(splitmix64(splitmix64(master) ^ trial) ^ stream);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t trial, std::uint64_t stream) {
  return Rng(derive_seed(master, trial, stream));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound), bound > 0, by rejection.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  // 2^64 mod bound; draws below it would bias the low residues.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % bound;
}

// Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_index(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace oride

#endif  // ORIDE_RNG_HPP_
