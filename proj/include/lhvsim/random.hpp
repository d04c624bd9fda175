// Copyright 2026 The lhvsim Authors
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

#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace lhvsim {

/// Anything that hands out uniform doubles on [0, 1).
template <typename T>
concept UnitSource = requires(T& source) {
  { source.next_unit() } -> std::convertible_to<double>;
};

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `seed`. Distinct indices give unrelated
/// streams; the mapping is fixed so results never depend on scheduling.
constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(~index));
}

/// 64-bit Mersenne Twister stream producing 53-bit uniform doubles.
class UniformStream {
public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

static_assert(UnitSource<UniformStream>);

} // namespace lhvsim
