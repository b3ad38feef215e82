// Copyright 2026 The shufflesum Authors
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

#ifndef SHUFFLESUM_RANDOM_H_
#define SHUFFLESUM_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace shufflesum {

// Seeded, splittable, deterministic pseudorandom stream.
//
// NOT a cryptographic generator. This library simulates and analyzes the
// protocol; it is not meant to protect real inputs.
//
// A stream is identified by its seed and a path of split indices. Two streams
// with the same (seed, path) produce identical sequences on every platform:
// the engine is std::mt19937_64 keyed through std::seed_seq, and all bounded
// draws go through UniformBelow rather than the implementation-defined
// standard distributions.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  uint64_t seed() const { return seed_; }
  const std::vector<uint64_t>& path() const { return path_; }

  // Independent child stream; does not advance this stream.
  RandomStream Split(uint64_t index) const;

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [0, bound) by masked rejection; bound >= 1.
  uint64_t UniformBelow(uint64_t bound);

 private:
  RandomStream(uint64_t seed, std::vector<uint64_t> path);

  uint64_t seed_;
  std::vector<uint64_t> path_;
  std::mt19937_64 engine_;
};

// Fisher-Yates; every permutation of `items` is equally likely.
template <typename T>
void ShuffleInPlace(std::span<T> items, RandomStream& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.UniformBelow(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace shufflesum

#endif  // SHUFFLESUM_RANDOM_H_
