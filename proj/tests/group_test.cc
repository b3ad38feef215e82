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

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gtest/gtest.h"
#include "shufflesum/stats.h"

namespace shufflesum {
namespace {

using boost::multiprecision::cpp_int;

GroupElement E(uint64_t v, Modulus m) { return GroupElement(v, m); }

TEST(ModulusTest, Range) {
  EXPECT_THROW(Modulus(0), std::invalid_argument);
  EXPECT_THROW(Modulus(1), std::invalid_argument);
  EXPECT_NO_THROW(Modulus(2));
  EXPECT_NO_THROW(Modulus(Modulus::kMax));
  EXPECT_THROW(Modulus(Modulus::kMax + 1), std::invalid_argument);
  EXPECT_EQ(Modulus::FromBits(32).value(), uint64_t{1} << 32);
  EXPECT_THROW(Modulus::FromBits(0), std::invalid_argument);
  EXPECT_THROW(Modulus::FromBits(64), std::invalid_argument);
}

TEST(GroupElementTest, RejectsUnreduced) {
  const Modulus m(7);
  EXPECT_THROW(GroupElement(7, m), std::out_of_range);
  EXPECT_EQ(GroupElement::Reduce(15, m).value(), 1u);
}

TEST(GroupTest, AddExamples) {
  const Modulus m7(7);
  EXPECT_EQ(Add(E(0, m7), E(5, m7), m7), E(5, m7));
  EXPECT_EQ(Add(E(3, m7), E(5, m7), m7), E(1, m7));
}

TEST(GroupTest, AddNearCapMatchesBigIntegerOracle) {
  const Modulus m((uint64_t{1} << 63) - 1);
  const uint64_t a = uint64_t{1} << 62;
  EXPECT_EQ(Add(E(a, m), E(a, m), m).value(), 1u);

  RandomStream rng(11);
  for (uint64_t mv : std::initializer_list<uint64_t>{Modulus::kMax, Modulus::kMax - 1, (uint64_t{1} << 62) + 3}) {
    const Modulus mm(mv);
    for (int i = 0; i < 1000; ++i) {
      const GroupElement x = UniformElement(rng, mm), y = UniformElement(rng, mm);
      const cpp_int expected = (cpp_int(x.value()) + y.value()) % mv;
      ASSERT_EQ(cpp_int(Add(x, y, mm).value()), expected);
    }
  }
}

TEST(GroupTest, NegExamplesAndInvolution) {
  const Modulus m7(7);
  EXPECT_EQ(Neg(E(0, m7), m7), E(0, m7));
  EXPECT_EQ(Neg(E(3, m7), m7), E(4, m7));
  RandomStream rng(3);
  for (uint64_t mv : std::initializer_list<uint64_t>{2ull, 7ull, 1ull << 32, Modulus::kMax}) {
    const Modulus m(mv);
    for (int i = 0; i < 1000; ++i) {
      const GroupElement x = UniformElement(rng, m);
      ASSERT_EQ(Neg(Neg(x, m), m), x);
      ASSERT_EQ(Add(x, Neg(x, m), m), GroupElement());
    }
  }
}

TEST(GroupTest, GroupSum) {
  const Modulus m5(5);
  EXPECT_EQ(GroupSum({}, m5), GroupElement());
  std::vector<GroupElement> s{E(1, m5), E(2, m5), E(3, m5)};
  EXPECT_EQ(GroupSum(s, m5), E(1, m5));
  std::sort(s.begin(), s.end());
  do {
    EXPECT_EQ(GroupSum(s, m5), E(1, m5));
  } while (std::next_permutation(s.begin(), s.end()));
}

TEST(GroupTest, AbelianGroupAxiomsOnRandomTriples) {
  RandomStream rng(99);
  for (uint64_t mv : std::initializer_list<uint64_t>{2ull, 3ull, 1000003ull, 1ull << 32, Modulus::kMax - 5}) {
    const Modulus m(mv);
    for (int i = 0; i < 2000; ++i) {
      const GroupElement a = UniformElement(rng, m), b = UniformElement(rng, m),
                         c = UniformElement(rng, m);
      ASSERT_EQ(Add(Add(a, b, m), c, m), Add(a, Add(b, c, m), m));
      ASSERT_EQ(Add(a, b, m), Add(b, a, m));
      ASSERT_EQ(Add(a, GroupElement(), m), a);
      ASSERT_LT(Add(a, b, m).value(), mv);
      ASSERT_LT(Neg(a, m).value(), mv);
      ASSERT_LT(Sub(a, b, m).value(), mv);
    }
  }
}

TEST(UniformElementTest, TwoElementsHalfEach) {
  RandomStream rng(1);
  const Modulus m(2);
  const int kSamples = 100000;
  int ones = 0;
  for (int i = 0; i < kSamples; ++i) ones += UniformElement(rng, m).value();
  const double sd = std::sqrt(kSamples * 0.25);
  EXPECT_LT(std::abs(ones - kSamples / 2.0), 4 * sd);
}

TEST(UniformElementTest, ThreeResiduesWithinFourSigma) {
  RandomStream rng(2);
  const Modulus m(3);
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 300000; ++i) ++counts[UniformElement(rng, m).value()];
  const double sd = std::sqrt(300000 * (1.0 / 3) * (2.0 / 3));
  for (int c : counts) EXPECT_LT(std::abs(c - 100000.0), 4 * sd);
}

// Goodness of fit at significance 1e-6 with 10^6 samples. For m = 2^32 the
// residues are grouped into 1024 equiprobable bins.
TEST(UniformElementTest, ChiSquareGoodnessOfFit) {
  RandomStream rng(3);
  for (uint64_t mv : std::initializer_list<uint64_t>{2ull, 3ull, 7ull, 1ull << 32}) {
    const Modulus m(mv);
    const uint64_t bins = std::min<uint64_t>(mv, 1024);
    std::vector<uint64_t> counts(bins, 0);
    for (int i = 0; i < 1000000; ++i) {
      const uint64_t v = UniformElement(rng, m).value();
      ++counts[mv <= 1024 ? v : v / (mv / bins)];
    }
    std::vector<double> p(bins, 1.0 / bins);
    EXPECT_LT(stats::ChiSquareStatistic(counts, p),
              stats::ChiSquareCritical(bins - 1, 1e-6))
        << "m = " << mv;
  }
}

TEST(UniformElementTest, FixedSeedIsReproducible) {
  const Modulus m(1000);
  RandomStream a(77), b(77);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(UniformElement(a, m), UniformElement(b, m));
  }
}

}  // namespace
}  // namespace shufflesum
