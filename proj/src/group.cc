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

#include "shufflesum/group.h"

#include <stdexcept>
#include <string>

namespace shufflesum {

Modulus::Modulus(uint64_t m) : m_(m) {
  if (m < 2 || m > kMax) {
    throw std::invalid_argument("modulus must satisfy 2 <= m <= 2^63, got " +
                                std::to_string(m));
  }
}

Modulus Modulus::FromBits(int bits) {
  if (bits < 1 || bits > 63) {
    throw std::invalid_argument("modulus bits must be in [1, 63], got " +
                                std::to_string(bits));
  }
  return Modulus(uint64_t{1} << bits);
}

GroupElement::GroupElement(uint64_t value, Modulus m) : value_(value) {
  if (value >= m.value()) {
    throw std::out_of_range("group element " + std::to_string(value) +
                            " not reduced modulo " + std::to_string(m.value()));
  }
}

GroupElement GroupElement::Reduce(uint64_t value, Modulus m) {
  return GroupElement(value % m.value(), Unchecked{});
}

GroupElement Add(GroupElement a, GroupElement b, Modulus m) {
  const unsigned __int128 sum =
      static_cast<unsigned __int128>(a.value_) + b.value_;
  return GroupElement(static_cast<uint64_t>(sum % m.value()),
                      GroupElement::Unchecked{});
}

GroupElement Neg(GroupElement a, Modulus m) {
  if (a.value_ == 0) return a;
  return GroupElement(m.value() - a.value_, GroupElement::Unchecked{});
}

GroupElement GroupSum(std::span<const GroupElement> elements, Modulus m) {
  GroupElement acc;
  for (GroupElement e : elements) acc = Add(acc, e, m);
  return acc;
}

GroupElement UniformElement(RandomStream& rng, Modulus m) {
  return GroupElement(rng.UniformBelow(m.value()), GroupElement::Unchecked{});
}

}  // namespace shufflesum
