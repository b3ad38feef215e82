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

#ifndef SHUFFLESUM_SHARING_H_
#define SHUFFLESUM_SHARING_H_

#include <span>
#include <vector>

#include "shufflesum/group.h"
#include "shufflesum/random.h"

namespace shufflesum {

// k additive shares of a secret in Z_m.
class ShareVector {
 public:
  // Throws std::invalid_argument if `shares` is empty.
  ShareVector(std::vector<GroupElement> shares, Modulus m);

  int k() const { return static_cast<int>(shares_.size()); }
  Modulus modulus() const { return m_; }
  std::span<const GroupElement> shares() const { return shares_; }
  GroupElement operator[](int j) const { return shares_[j]; }

  friend bool operator==(const ShareVector&, const ShareVector&) = default;

 private:
  std::vector<GroupElement> shares_;
  Modulus m_;
};

// k-additive sharing: uniform over all k-tuples summing to x. Draws the first
// k-1 shares uniformly and solves for the last. Rejects k < 1.
ShareVector Share(GroupElement x, int k, Modulus m, RandomStream& rng);

GroupElement Reconstruct(const ShareVector& s);

// One step of the decomposition R_{k+1}(x) = (R_k(x - U), U), U uniform.
struct RecursiveShare {
  ShareVector head;   // k shares of x - tail
  GroupElement tail;  // U
};

// Rejects k_plus_1 < 2. Draws U first, then the head sharing.
RecursiveShare ShareRecursive(GroupElement x, int k_plus_1, Modulus m,
                              RandomStream& rng);

}  // namespace shufflesum

#endif  // SHUFFLESUM_SHARING_H_
