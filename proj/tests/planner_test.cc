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

#include "shufflesum/planner.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "shufflesum/random.h"

namespace shufflesum {
namespace {

// Independent evaluation in long double, natural logs.
long double SigmaReference(int k, long double n, long double m) {
  return ((k - 1) * (std::log(n) - 1.0L) - std::log(m)) /
         (2.0L * std::numbers::ln2_v<long double>);
}

bool Has(const std::vector<Precondition>& v, Precondition p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

TEST(SigmaTest, Examples) {
  EXPECT_NEAR(SigmaFor(11, 10000, uint64_t{1} << 32), 43.2, 0.1);
  EXPECT_NEAR(SigmaFor(3, 19, 2), 2.305, 0.001);
  for (uint64_t n : std::initializer_list<uint64_t>{2ull, 19ull, 1000ull}) {
    EXPECT_DOUBLE_EQ(SigmaFor(1, n, 8), -1.5);
  }
}

TEST(SigmaTest, MatchesReferenceEvaluation) {
  RandomStream rng(1);
  for (int i = 0; i < 1000; ++i) {
    const int k = 1 + static_cast<int>(rng.UniformBelow(64));
    const uint64_t n = 2 + rng.UniformBelow(1000000000);
    const uint64_t m = 2 + rng.UniformBelow((uint64_t{1} << 62));
    ASSERT_NEAR(SigmaFor(k, n, m),
                static_cast<double>(SigmaReference(k, n, m)), 1e-9);
  }
}

TEST(PlanTest, HeadlineParameters) {
  const PlanResult r = PlanShuffledK(40, 10000, uint64_t{1} << 32);
  EXPECT_EQ(r.k_shuffled, 11);
  EXPECT_EQ(r.total_messages, 12);
  EXPECT_GE(r.achieved_sigma, 40);
  EXPECT_TRUE(r.AllPreconditionsOk());
  EXPECT_LT(r.total_messages, BaselineKLowerBound(40));
}

TEST(PlanTest, SmallestInstance) {
  // (2*1 + 1) / (log2 19 - log2 e) + 1 = 2.07, so three shuffled messages.
  const PlanResult r = PlanShuffledK(1, 19, 2);
  EXPECT_EQ(r.k_shuffled, 3);
  EXPECT_TRUE(r.AllPreconditionsOk());
  EXPECT_LT(SigmaFor(2, 19, 2), 1);
}

TEST(PlanTest, Rejections) {
  EXPECT_THROW(PlanShuffledK(40, 2, 2), std::invalid_argument);
  EXPECT_THROW(PlanShuffledK(40, 1, 2), std::invalid_argument);
  EXPECT_THROW(PlanShuffledK(0, 100, 2), std::invalid_argument);
  EXPECT_THROW(PlanShuffledK(-1, 100, 2), std::invalid_argument);
  EXPECT_THROW(PlanShuffledK(40, 100, 1), std::invalid_argument);
  EXPECT_THROW(PlanShuffledKLog2(40, 1.0, 1), std::invalid_argument);
}

TEST(PlanTest, FlagsPreconditionMisses) {
  const PlanResult small_n = PlanShuffledK(40, 5, 2);
  EXPECT_FALSE(small_n.preconditions[0].ok);
  EXPECT_EQ(small_n.preconditions[0].label, "n>=19");
  const PlanResult small_s = PlanShuffledK(0.25, 1 << 20, 2);
  EXPECT_FALSE(small_s.AllPreconditionsOk());
  EXPECT_EQ(small_s.preconditions[2].label, "sigma>=1");
  EXPECT_FALSE(small_s.preconditions[2].ok);
}

TEST(PlanTest, TotalIsIntroFormulaPlusTwo) {
  // Total messages written directly as ceil((2 sigma + log2 m)/(log2 n -
  // log2 e) + 2).
  for (double sigma : {10.0, 40.0, 80.0}) {
    for (uint64_t n : std::initializer_list<uint64_t>{100ull, 10000ull, 1000000ull}) {
      const double log2m = 32;
      const double total =
          std::ceil((2 * sigma + log2m) / (std::log2(n) - std::log2(std::exp(1.0))) + 2);
      EXPECT_EQ(PlanShuffledK(sigma, n, uint64_t{1} << 32).total_messages,
                static_cast<int>(total));
    }
  }
}

TEST(PlanTest, InverseMinimalityProperty) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> sig(1, 128);
  std::uniform_int_distribution<uint64_t> nn(19, 1000000000);
  std::uniform_int_distribution<uint64_t> mm(2, uint64_t{1} << 63);
  for (int i = 0; i < 10000; ++i) {
    const double s = sig(gen);
    const uint64_t n = nn(gen), m = mm(gen);
    const PlanResult r = PlanShuffledK(s, n, m);
    ASSERT_GE(SigmaFor(r.k_shuffled, n, m), s);
    ASSERT_LT(SigmaFor(r.k_shuffled - 1, n, m), s);
    ASSERT_EQ(r.total_messages, r.k_shuffled + 1);
    ASSERT_DOUBLE_EQ(r.achieved_sigma, SigmaFor(r.k_shuffled, n, m));
  }
}

TEST(PlanTest, MinimalityAtExactIntegerBoundaries) {
  // Choose sigma so that the ceiling argument is an integer.
  for (uint64_t n : std::initializer_list<uint64_t>{32ull, 1024ull, 1ull << 20}) {
    for (int k = 3; k < 20; ++k) {
      const double s = SigmaFor(k, n, 4);
      const PlanResult r = PlanShuffledK(s, n, 4);
      EXPECT_EQ(r.k_shuffled, k) << "n=" << n << " k=" << k;
    }
  }
}

TEST(PlanTest, MonotoneInSigmaAndM) {
  int prev = 0;
  for (double s = 1; s <= 128; s += 0.5) {
    const int k = PlanShuffledK(s, 10000, 1 << 16).k_shuffled;
    EXPECT_GE(k, prev);
    prev = k;
  }
  prev = 0;
  for (int bits = 1; bits <= 63; ++bits) {
    const int k = PlanShuffledK(40, 10000, uint64_t{1} << bits).k_shuffled;
    EXPECT_GE(k, prev);
    prev = k;
  }
}

TEST(PlanTest, NonincreasingInN) {
  int prev = 1 << 30;
  for (uint64_t n = 19; n < (uint64_t{1} << 40); n = n * 3 / 2 + 1) {
    const int k = PlanShuffledK(40, n, uint64_t{1} << 32).k_shuffled;
    EXPECT_LE(k, prev) << "n=" << n;
    prev = k;
  }
}

// With m = n^1.5 the required k tends to ceil(1.5 + 1) = 3. Reaching it needs
// (80 + 1.5 L) / (L - log2 e) <= 2, i.e. L = log2 n >= 80 + 2 log2 e ~ 165.8.
TEST(PlanTest, SubquadraticGroupConvergesToThree) {
  int prev = 1 << 30;
  int first_three = -1;
  for (double log2n = 5; log2n <= 4096; log2n += 1) {
    const int k = PlanShuffledKLog2(40, log2n, 1.5 * log2n).k_shuffled;
    EXPECT_LE(k, prev) << "log2 n = " << log2n;
    EXPECT_GE(k, 3);
    if (k == 3 && first_three < 0) first_three = static_cast<int>(log2n);
    prev = k;
  }
  EXPECT_EQ(first_three, 166);
  EXPECT_EQ(PlanShuffledKLog2(40, 1e6, 1.5e6).k_shuffled, 3);
}

TEST(BaselineTest, Values) {
  EXPECT_DOUBLE_EQ(BaselineKLowerBound(40), 80);
  EXPECT_DOUBLE_EQ(BaselineKLowerBound(1), 2);
  EXPECT_THROW(BaselineKLowerBound(0), std::invalid_argument);
}

TEST(ValidateTest, Examples) {
  EXPECT_TRUE(ValidateParams(19, 3, 2).empty());
  EXPECT_EQ(ValidateParams(18, 3, 2),
            std::vector<Precondition>{Precondition::kNAtLeast19});
  const auto big_m = ValidateParams(19, 3, 25);
  EXPECT_TRUE(Has(big_m, Precondition::kMBound));
  EXPECT_FALSE(Has(big_m, Precondition::kNAtLeast19));
  EXPECT_FALSE(Has(big_m, Precondition::kKAtLeast3));
  // 24 is just inside the bound (19/e)^2 / 2 = 24.43.
  EXPECT_FALSE(Has(ValidateParams(19, 3, 24), Precondition::kMBound));
  EXPECT_TRUE(Has(ValidateParams(19, 2, 2), Precondition::kKAtLeast3));
}

TEST(ValidateTest, Labels) {
  EXPECT_EQ(PreconditionLabel(Precondition::kNAtLeast19), "n>=19");
  EXPECT_EQ(PreconditionLabel(Precondition::kKAtLeast3), "k>=3");
  EXPECT_EQ(PreconditionLabel(Precondition::kSigmaAtLeast1), "sigma>=1");
}

}  // namespace
}  // namespace shufflesum
