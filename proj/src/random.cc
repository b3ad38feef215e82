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

#include "shufflesum/random.h"

#include <bit>
#include <stdexcept>

namespace shufflesum {
namespace {

std::mt19937_64 MakeEngine(uint64_t seed, const std::vector<uint64_t>& path) {
  std::vector<uint32_t> words;
  words.reserve(2 * (path.size() + 2));
  auto push = [&words](uint64_t v) {
    words.push_back(static_cast<uint32_t>(v));
    words.push_back(static_cast<uint32_t>(v >> 32));
  };
  push(seed);
  push(path.size());
  for (uint64_t p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(uint64_t seed) : RandomStream(seed, {}) {}

RandomStream::RandomStream(uint64_t seed, std::vector<uint64_t> path)
    : seed_(seed), path_(std::move(path)), engine_(MakeEngine(seed_, path_)) {}

RandomStream RandomStream::Split(uint64_t index) const {
  std::vector<uint64_t> child = path_;
  child.push_back(index);
  return RandomStream(seed_, std::move(child));
}

uint64_t RandomStream::UniformBelow(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformBelow: bound must be >= 1");
  if (bound == 1) return 0;
  const uint64_t top = bound - 1;
  const uint64_t mask =
      top == 0 ? 0 : (~uint64_t{0} >> std::countl_zero(top));
  for (;;) {
    const uint64_t candidate = engine_() & mask;
    if (candidate < bound) return candidate;
  }
}

}  // namespace shufflesum
