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

#ifndef SHUFFLESUM_PROTOCOL_H_
#define SHUFFLESUM_PROTOCOL_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "shufflesum/group.h"
#include "shufflesum/random.h"

namespace shufflesum {

enum class Variant {
  kPlain,             // k shuffled shares per user
  kRandomizedInputs,  // k shuffled shares plus one share sent in the clear
};

std::string_view VariantName(Variant v);  // "plain" | "randomized"
Variant ParseVariant(std::string_view name);

struct ProtocolParams {
  ProtocolParams(int n, int k, Modulus m, Variant variant);

  // Security-theorem preconditions that do not hold for these parameters
  // (n >= 19, k >= 3, sigma >= 1). The protocol itself runs for any n, k >= 1.
  std::vector<std::string> AdvisoryWarnings() const;

  int n;
  int k;
  Modulus m;
  Variant variant;
};

// What the server observes after one execution.
struct Transcript {
  int n = 0;
  int k = 0;
  Modulus m{2};
  Variant variant = Variant::kPlain;
  // blocks[j] is the output of shuffler j; each has length n.
  std::vector<std::vector<GroupElement>> blocks;
  // User-aligned, unshuffled; present iff variant == kRandomizedInputs.
  std::optional<std::vector<GroupElement>> clear_block;

  int MessagesPerUser() const { return k + (clear_block ? 1 : 0); }
  // Residues in block order, clear block last.
  std::vector<uint64_t> Flatten() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// Receives the k blocks of shares before shuffling, indexed [share][user].
using ShareCaptureHook =
    std::function<void(const std::vector<std::vector<GroupElement>>&)>;

// Uniformly random permutation of `elements`. Rejects empty input.
std::vector<GroupElement> ShuffleBlock(std::span<const GroupElement> elements,
                                       RandomStream& rng);

// Each user shares its input into k shares; block j is the shuffle of all
// users' j-th shares. Randomness is consumed user by user for sharing, then
// block by block for shuffling.
Transcript RunIkos(std::span<const GroupElement> inputs, int k, Modulus m,
                   RandomStream& rng, const ShareCaptureHook& capture = {});

// As RunIkos, but each input is split with ShareRecursive into k shuffled
// shares and one clear share.
Transcript RunIkosRandomized(std::span<const GroupElement> inputs, int k,
                             Modulus m, RandomStream& rng,
                             const ShareCaptureHook& capture = {});

Transcript Run(std::span<const GroupElement> inputs, const ProtocolParams& p,
               RandomStream& rng);

// Sum of every element of every block and of the clear block.
GroupElement Aggregate(const Transcript& t);

// {n, k, m, variant, blocks, clear_block, seed, run}
nlohmann::json TranscriptToJson(const Transcript& t, uint64_t seed,
                                std::optional<uint64_t> run = std::nullopt);

struct TranscriptRecord {
  Transcript transcript;
  uint64_t seed = 0;
  std::optional<uint64_t> run;
};

// Validates shape and residues; throws std::invalid_argument on malformed
// input.
TranscriptRecord TranscriptFromJson(const nlohmann::json& j);

}  // namespace shufflesum

#endif  // SHUFFLESUM_PROTOCOL_H_
