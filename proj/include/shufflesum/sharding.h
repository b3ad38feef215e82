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

#ifndef SHUFFLESUM_SHARDING_H_
#define SHUFFLESUM_SHARDING_H_

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "shufflesum/random.h"

namespace shufflesum {

// Stream families; shard s of family f draws from
// RandomStream(seed).Split(f).Split(s).
enum class StreamFamily : uint64_t {
  kGraphs = 1,
  kCollisionVVsV = 2,
  kCollisionEEvent = 3,
  kSimulation = 4,
};

// Runs `body(rng, shard_samples)` for each shard on its own thread and
// returns the partial results in shard order. Shard s receives
// samples / shards samples, plus one if s < samples % shards. The merged
// result depends only on (seed, shards), never on thread timing.
template <typename Result, typename Body>
std::vector<Result> RunShards(uint64_t samples, int shards, uint64_t seed,
                              StreamFamily family, Body body) {
  if (shards < 1) throw std::invalid_argument("shards must be >= 1");
  const RandomStream root = RandomStream(seed).Split(static_cast<uint64_t>(family));
  std::vector<Result> results(shards);
  auto run_one = [&](int s) {
    const uint64_t count =
        samples / shards + (static_cast<uint64_t>(s) < samples % shards ? 1 : 0);
    RandomStream rng = root.Split(static_cast<uint64_t>(s));
    results[s] = body(rng, count);
  };
  if (shards == 1) {
    run_one(0);
    return results;
  }
  std::vector<std::jthread> workers;
  workers.reserve(shards);
  for (int s = 0; s < shards; ++s) workers.emplace_back(run_one, s);
  workers.clear();  // joins
  return results;
}

}  // namespace shufflesum

#endif  // SHUFFLESUM_SHARDING_H_
