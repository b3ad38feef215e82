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

#include "shufflesum/sharing.h"

#include <stdexcept>
#include <string>
#include <utility>

namespace shufflesum {

ShareVector::ShareVector(std::vector<GroupElement> shares, Modulus m)
    : shares_(std::move(shares)), m_(m) {
  if (shares_.empty()) {
    throw std::invalid_argument("ShareVector needs at least one share");
  }
}

ShareVector Share(GroupElement x, int k, Modulus m, RandomStream& rng) {
  if (k < 1) {
    throw std::invalid_argument("Share: k must be >= 1, got " +
                                std::to_string(k));
  }
  std::vector<GroupElement> shares;
  shares.reserve(k);
  GroupElement partial;
  for (int j = 0; j + 1 < k; ++j) {
    shares.push_back(UniformElement(rng, m));
    partial = Add(partial, shares.back(), m);
  }
  shares.push_back(Sub(x, partial, m));
  return ShareVector(std::move(shares), m);
}

GroupElement Reconstruct(const ShareVector& s) {
  return GroupSum(s.shares(), s.modulus());
}

RecursiveShare ShareRecursive(GroupElement x, int k_plus_1, Modulus m,
                              RandomStream& rng) {
  if (k_plus_1 < 2) {
    throw std::invalid_argument("ShareRecursive: k+1 must be >= 2, got " +
                                std::to_string(k_plus_1));
  }
  const GroupElement tail = UniformElement(rng, m);
  return RecursiveShare{Share(Sub(x, tail, m), k_plus_1 - 1, m, rng), tail};
}

}  // namespace shufflesum
