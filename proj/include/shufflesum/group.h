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

#ifndef SHUFFLESUM_GROUP_H_
#define SHUFFLESUM_GROUP_H_

#include <compare>
#include <cstdint>
#include <span>

#include "shufflesum/random.h"

namespace shufflesum {

// Order of the cyclic group Z_m, 2 <= m <= 2^63.
class Modulus {
 public:
  static constexpr uint64_t kMax = uint64_t{1} << 63;

  explicit Modulus(uint64_t m);
  // m = 2^bits, 1 <= bits <= 63.
  static Modulus FromBits(int bits);

  uint64_t value() const { return m_; }

  friend bool operator==(Modulus, Modulus) = default;

 private:
  uint64_t m_;
};

// Canonical residue in [0, m). The modulus is carried by the caller, not by
// the element, so vectors of elements stay the size of their residues.
class GroupElement {
 public:
  constexpr GroupElement() = default;
  // Throws std::out_of_range unless value < m.
  GroupElement(uint64_t value, Modulus m);

  // Reduces an arbitrary 64-bit integer modulo m.
  static GroupElement Reduce(uint64_t value, Modulus m);

  constexpr uint64_t value() const { return value_; }

  friend constexpr auto operator<=>(GroupElement, GroupElement) = default;

 private:
  struct Unchecked {};
  constexpr GroupElement(uint64_t value, Unchecked) : value_(value) {}

  friend GroupElement Add(GroupElement, GroupElement, Modulus);
  friend GroupElement Neg(GroupElement, Modulus);
  friend GroupElement UniformElement(RandomStream&, Modulus);

  uint64_t value_ = 0;
};

GroupElement Add(GroupElement a, GroupElement b, Modulus m);
GroupElement Neg(GroupElement a, Modulus m);
inline GroupElement Sub(GroupElement a, GroupElement b, Modulus m) {
  return Add(a, Neg(b, m), m);
}

// Left fold of Add; the empty sum is 0.
GroupElement GroupSum(std::span<const GroupElement> elements, Modulus m);

// Exactly uniform over Z_m (no modulo bias).
GroupElement UniformElement(RandomStream& rng, Modulus m);

}  // namespace shufflesum

#endif  // SHUFFLESUM_GROUP_H_
