// Copyright 2026 The searchgame Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEARCHGAME_RNG_HPP_
#define SEARCHGAME_RNG_HPP_

#include <cstdint>

namespace searchgame {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Counter-based generator: every draw is a pure function of
// (seed, counter, stream), so work split across shards reproduces the
// serial stream exactly.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t word(std::uint64_t counter, std::uint64_t stream) const {
    return splitmix64(splitmix64(splitmix64(seed_) + counter) + stream);
  }

  // Uniform in [0, 1).
  double unit(std::uint64_t counter, std::uint64_t stream) const {
    return static_cast<double>(word(counter, stream) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Sequential convenience wrapper for instance generation, where shard
// reproducibility is irrelevant but determinism per seed still matters.
class SequenceRng {
 public:
  explicit SequenceRng(std::uint64_t seed) : rng_(seed) {}

  double next_unit() { return rng_.unit(counter_++, 0); }

  // Uniform integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    return bound == 0 ? 0 : rng_.word(counter_++, 0) % bound;
  }

  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace searchgame

#endif  // SEARCHGAME_RNG_HPP_
