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

#include "shufflesum/protocol.h"

#include <stdexcept>
#include <utility>

#include "shufflesum/planner.h"
#include "shufflesum/sharing.h"

namespace shufflesum {
namespace {

void CheckRunArgs(std::span<const GroupElement> inputs, int k, Modulus m) {
  if (inputs.empty()) throw std::invalid_argument("protocol needs n >= 1 users");
  if (k < 1) throw std::invalid_argument("protocol needs k >= 1 shares");
  for (GroupElement x : inputs) {
    if (x.value() >= m.value()) {
      throw std::out_of_range("protocol input not reduced modulo m");
    }
  }
}

Transcript ShuffleBlocks(std::vector<std::vector<GroupElement>> blocks,
                         int n, int k, Modulus m, Variant variant,
                         RandomStream& rng, const ShareCaptureHook& capture) {
  if (capture) capture(blocks);
  Transcript t;
  t.n = n;
  t.k = k;
  t.m = m;
  t.variant = variant;
  t.blocks.reserve(k);
  for (auto& block : blocks) t.blocks.push_back(ShuffleBlock(block, rng));
  return t;
}

}  // namespace

std::string_view VariantName(Variant v) {
  return v == Variant::kPlain ? "plain" : "randomized";
}

Variant ParseVariant(std::string_view name) {
  if (name == "plain") return Variant::kPlain;
  if (name == "randomized") return Variant::kRandomizedInputs;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected plain|randomized)");
}

ProtocolParams::ProtocolParams(int n, int k, Modulus m, Variant variant)
    : n(n), k(k), m(m), variant(variant) {
  if (n < 1) throw std::invalid_argument("ProtocolParams: n must be >= 1");
  if (k < 1) throw std::invalid_argument("ProtocolParams: k must be >= 1");
}

std::vector<std::string> ProtocolParams::AdvisoryWarnings() const {
  std::vector<std::string> out;
  for (Precondition p : ValidateParams(n, k, m.value())) {
    if (p == Precondition::kMBound) continue;  // implied by sigma >= 1
    out.emplace_back(PreconditionLabel(p));
  }
  return out;
}

std::vector<uint64_t> Transcript::Flatten() const {
  std::vector<uint64_t> out;
  out.reserve(static_cast<size_t>(n) * MessagesPerUser());
  for (const auto& block : blocks) {
    for (GroupElement e : block) out.push_back(e.value());
  }
  if (clear_block) {
    for (GroupElement e : *clear_block) out.push_back(e.value());
  }
  return out;
}

std::vector<GroupElement> ShuffleBlock(std::span<const GroupElement> elements,
                                       RandomStream& rng) {
  if (elements.empty()) throw std::invalid_argument("ShuffleBlock: empty input");
  std::vector<GroupElement> out(elements.begin(), elements.end());
  ShuffleInPlace(std::span<GroupElement>(out), rng);
  return out;
}

Transcript RunIkos(std::span<const GroupElement> inputs, int k, Modulus m,
                   RandomStream& rng, const ShareCaptureHook& capture) {
  CheckRunArgs(inputs, k, m);
  const int n = static_cast<int>(inputs.size());
  std::vector<std::vector<GroupElement>> blocks(k);
  for (auto& b : blocks) b.reserve(n);
  for (GroupElement x : inputs) {
    const ShareVector s = Share(x, k, m, rng);
    for (int j = 0; j < k; ++j) blocks[j].push_back(s[j]);
  }
  return ShuffleBlocks(std::move(blocks), n, k, m, Variant::kPlain, rng,
                       capture);
}

Transcript RunIkosRandomized(std::span<const GroupElement> inputs, int k,
                             Modulus m, RandomStream& rng,
                             const ShareCaptureHook& capture) {
  CheckRunArgs(inputs, k, m);
  const int n = static_cast<int>(inputs.size());
  std::vector<std::vector<GroupElement>> blocks(k);
  for (auto& b : blocks) b.reserve(n);
  std::vector<GroupElement> clear;
  clear.reserve(n);
  for (GroupElement x : inputs) {
    const RecursiveShare s = ShareRecursive(x, k + 1, m, rng);
    for (int j = 0; j < k; ++j) blocks[j].push_back(s.head[j]);
    clear.push_back(s.tail);
  }
  Transcript t = ShuffleBlocks(std::move(blocks), n, k, m,
                               Variant::kRandomizedInputs, rng, capture);
  t.clear_block = std::move(clear);
  return t;
}

Transcript Run(std::span<const GroupElement> inputs, const ProtocolParams& p,
               RandomStream& rng) {
  if (static_cast<int>(inputs.size()) != p.n) {
    throw std::invalid_argument("Run: input count does not match n");
  }
  return p.variant == Variant::kPlain
             ? RunIkos(inputs, p.k, p.m, rng)
             : RunIkosRandomized(inputs, p.k, p.m, rng);
}

GroupElement Aggregate(const Transcript& t) {
  GroupElement acc;
  for (const auto& block : t.blocks) acc = Add(acc, GroupSum(block, t.m), t.m);
  if (t.clear_block) acc = Add(acc, GroupSum(*t.clear_block, t.m), t.m);
  return acc;
}

nlohmann::json TranscriptToJson(const Transcript& t, uint64_t seed,
                                std::optional<uint64_t> run) {
  auto residues = [](const std::vector<GroupElement>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (GroupElement e : v) arr.push_back(e.value());
    return arr;
  };
  nlohmann::json j;
  j["n"] = t.n;
  j["k"] = t.k;
  j["m"] = t.m.value();
  j["variant"] = VariantName(t.variant);
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : t.blocks) j["blocks"].push_back(residues(b));
  j["clear_block"] = t.clear_block ? residues(*t.clear_block) : nullptr;
  j["seed"] = seed;
  if (run) j["run"] = *run;
  return j;
}

TranscriptRecord TranscriptFromJson(const nlohmann::json& j) {
  try {
    TranscriptRecord rec;
    Transcript& t = rec.transcript;
    t.n = j.at("n").get<int>();
    t.k = j.at("k").get<int>();
    t.m = Modulus(j.at("m").get<uint64_t>());
    t.variant = ParseVariant(j.at("variant").get<std::string>());
    if (t.n < 1 || t.k < 1) throw std::invalid_argument("n, k must be >= 1");
    auto parse_block = [&](const nlohmann::json& arr) {
      if (!arr.is_array() || static_cast<int>(arr.size()) != t.n) {
        throw std::invalid_argument("block length must equal n");
      }
      std::vector<GroupElement> out;
      out.reserve(t.n);
      for (const auto& v : arr) out.emplace_back(v.get<uint64_t>(), t.m);
      return out;
    };
    const auto& blocks = j.at("blocks");
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != t.k) {
      throw std::invalid_argument("blocks must hold k arrays");
    }
    for (const auto& b : blocks) t.blocks.push_back(parse_block(b));
    const auto& clear = j.at("clear_block");
    if (clear.is_null() != (t.variant == Variant::kPlain)) {
      throw std::invalid_argument("clear_block present iff variant randomized");
    }
    if (!clear.is_null()) t.clear_block = parse_block(clear);
    rec.seed = j.at("seed").get<uint64_t>();
    if (j.contains("run")) rec.run = j.at("run").get<uint64_t>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed transcript: ") +
                                e.what());
  } catch (const std::out_of_range& e) {
    throw std::invalid_argument(std::string("malformed transcript: ") +
                                e.what());
  }
}

}  // namespace shufflesum
