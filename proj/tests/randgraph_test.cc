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

#include "shufflesum/randgraph.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "brute_force.h"
#include "gtest/gtest.h"
#include "shufflesum/stats.h"

namespace shufflesum {
namespace {

using testing::BfsComponents;
using testing::BruteForceMPowerC;
using testing::NthPermutation;

std::vector<uint32_t> Identity(int n) {
  std::vector<uint32_t> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

TEST(DisjointSetTest, Basics) {
  DisjointSet ds(5);
  EXPECT_EQ(ds.components(), 5);
  EXPECT_TRUE(ds.Union(0, 1));
  EXPECT_FALSE(ds.Union(1, 0));
  EXPECT_TRUE(ds.Union(3, 4));
  EXPECT_EQ(ds.components(), 3);
  EXPECT_EQ(ds.Find(0), ds.Find(1));
  EXPECT_NE(ds.Find(0), ds.Find(3));
}

TEST(ComponentsTest, Examples) {
  EXPECT_EQ(CountComponents(4, {Identity(4), Identity(4)}), 4);
  EXPECT_EQ(CountComponents(5, {{1, 2, 3, 4, 0}}), 1);
  EXPECT_EQ(CountComponents(4, {{1, 0, 3, 2}}), 2);
  EXPECT_EQ(CountComponents(4, {{1, 0, 3, 2}, {0, 2, 1, 3}}), 1);
  EXPECT_EQ(CountComponents(1, {{0}}), 1);
}

TEST(ComponentsTest, RejectsNonPermutations) {
  EXPECT_THROW(PermutationMultigraph(3, {{0, 0, 1}}), std::invalid_argument);
  EXPECT_THROW(PermutationMultigraph(3, {{0, 1, 3}}), std::invalid_argument);
  EXPECT_THROW(PermutationMultigraph(3, {{0, 1}}), std::invalid_argument);
  EXPECT_THROW(PermutationMultigraph(3, {}), std::invalid_argument);
  EXPECT_THROW(PermutationMultigraph(0, {{}}), std::invalid_argument);
}

TEST(ComponentsTest, UnionFindMatchesBfs) {
  RandomStream rng(1);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng.UniformBelow(30));
    const int k = 1 + static_cast<int>(rng.UniformBelow(4));
    const PermutationMultigraph g = SampleGraph(n, k, rng);
    ASSERT_EQ(ConnectedComponents(g), BfsComponents(n, g.permutations()));
    ASSERT_GE(ConnectedComponents(g), 1);
    ASSERT_LE(ConnectedComponents(g), n);
  }
}

TEST(ComponentsTest, AllSingletonsIffAllIdentity) {
  // Exhaustive over (S_3)^2.
  for (uint64_t a = 0; a < 6; ++a) {
    for (uint64_t b = 0; b < 6; ++b) {
      const auto pa = NthPermutation(3, a), pb = NthPermutation(3, b);
      const bool identity = pa == Identity(3) && pb == Identity(3);
      EXPECT_EQ(CountComponents(3, {pa, pb}) == 3, identity);
    }
  }
}

TEST(SampleGraphTest, PermutationsAreUniform) {
  RandomStream rng(2);
  std::map<std::vector<uint32_t>, uint64_t> seen;
  for (int i = 0; i < 120000; ++i) ++seen[SampleGraph(4, 1, rng).permutations()[0]];
  ASSERT_EQ(seen.size(), 24u);
  std::vector<uint64_t> counts;
  for (const auto& [_, c] : seen) counts.push_back(c);
  std::vector<double> p(24, 1.0 / 24);
  EXPECT_LT(stats::ChiSquareStatistic(counts, p),
            stats::ChiSquareCritical(23, 1e-6));
}

TEST(Lemma4BoundTest, Examples) {
  EXPECT_DOUBLE_EQ(Lemma4ProbabilityBound(19, 3, 1).value, 1.0);
  const double e = std::numbers::e;
  EXPECT_NEAR(Lemma4ProbabilityBound(19, 3, 2).value,
              0.75 * std::pow(e / 19, 2), 1e-15);
  EXPECT_NEAR(Lemma4ProbabilityBound(19, 3, 2).value, 0.01536, 1e-5);
  EXPECT_TRUE(Lemma4ProbabilityBound(19, 3, 2).preconditions_hold);
  EXPECT_FALSE(Lemma4ProbabilityBound(18, 3, 2).preconditions_hold);
  EXPECT_FALSE(Lemma4ProbabilityBound(19, 2, 2).preconditions_hold);
  EXPECT_THROW(Lemma4ProbabilityBound(19, 3, 0), std::out_of_range);
  EXPECT_THROW(Lemma4ProbabilityBound(19, 3, 20), std::out_of_range);
}

TEST(Lemma4BoundTest, DecreasingInC) {
  for (int n : {19, 30, 50, 1000}) {
    for (int k : {3, 4, 8}) {
      // Strict until the bound underflows to zero.
      for (int c = 1; c < n; ++c) {
        const double cur = Lemma4ProbabilityBound(n, k, c).value;
        const double next = Lemma4ProbabilityBound(n, k, c + 1).value;
        if (cur == 0) {
          ASSERT_EQ(next, 0);
        } else {
          ASSERT_LT(next, cur);
        }
      }
    }
  }
}

TEST(ExpectationBoundTest, Examples) {
  const double e = std::numbers::e;
  EXPECT_NEAR(ExpectationBound(19, 3, 2), 2 + 4 * std::pow(e / 19, 2), 1e-12);
  EXPECT_NEAR(ExpectationBound(19, 3, 2), 2.0819, 1e-4);
  // The excess over m vanishes as n grows.
  EXPECT_NEAR(ExpectationBound(1 << 30, 3, 7), 7.0, 1e-15 * 7 + 1e-12);
  EXPECT_THROW(ExpectationBound(19, 3, 25), std::invalid_argument);
  EXPECT_THROW(ExpectationBound(18, 3, 2), std::invalid_argument);
  EXPECT_NO_THROW(ExpectationBound(19, 3, 24));
}

TEST(EstimateTest, TwoVerticesThreePermutations) {
  // C = 2 iff all three permutations are the identity: probability 1/8.
  const uint64_t kSamples = 100000;
  const ComponentHistogram h = EstimateComponentDistribution(2, 3, kSamples, 3);
  EXPECT_EQ(h.samples, kSamples);
  EXPECT_LE(std::abs(h.Frequency(2) - 0.125),
            stats::HoeffdingHalfwidth(kSamples, 0.999));
  EXPECT_DOUBLE_EQ(h.Frequency(1) + h.Frequency(2), 1.0);
  EXPECT_EQ(h.Frequency(3), 0.0);
}

TEST(EstimateTest, MPowerCSmallCases) {
  // (n=2, k=1): C is 2 or 1 with equal odds, E[2^C] = 3.
  MeanEstimate a = EstimateMPowerC(2, 1, 2, 200000, 4);
  EXPECT_LE(std::abs(a.estimate - 3.0), a.ci99_halfwidth);
  // (n=2, k=3): E[2^C] = 2 * 7/8 + 4 / 8 = 2.25.
  MeanEstimate b = EstimateMPowerC(2, 3, 2, 200000, 5);
  EXPECT_LE(std::abs(b.estimate - 2.25), b.ci99_halfwidth);
  MeanEstimate one = EstimateMPowerC(19, 3, 1, 1000, 6);
  EXPECT_DOUBLE_EQ(one.estimate, 1.0);
  EXPECT_DOUBLE_EQ(one.ci99_halfwidth, 0.0);
  EXPECT_THROW(EstimateMPowerC(19, 3, 0, 1000, 6), std::invalid_argument);
}

TEST(ExactTest, MatchesBruteForce) {
  const std::vector<std::pair<int, int>> cases = {
      {1, 1}, {2, 1}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {4, 2}, {5, 1}};
  for (auto [n, k] : cases) {
    for (uint64_t m : std::initializer_list<uint64_t>{2ull, 3ull, 5ull}) {
      EXPECT_NEAR(ExactMPowerC(n, k, m), BruteForceMPowerC(n, k, m),
                  1e-12 * BruteForceMPowerC(n, k, m))
          << n << "," << k << "," << m;
    }
  }
  EXPECT_NEAR(ExactMPowerC(3, 2, 2), 8.0 / 3, 1e-12);
  EXPECT_NEAR(ExactMPowerC(2, 3, 2), 2.25, 1e-12);
  EXPECT_NEAR(ExactMPowerC(2, 1, 2), 3.0, 1e-12);
}

TEST(ExactTest, CountsSumToTotal) {
  const std::vector<uint64_t> c = ExactComponentCounts(4, 2);
  uint64_t total = 0;
  for (uint64_t v : c) total += v;
  EXPECT_EQ(total, 24u * 24u);
  EXPECT_EQ(c[4], 1u);
  EXPECT_THROW(ExactComponentCounts(10, 3), std::invalid_argument);
}

TEST(ExactTest, MonteCarloWithinInterval) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {3, 3}}) {
    for (uint64_t m : std::initializer_list<uint64_t>{2ull, 5ull}) {
      const MeanEstimate est = EstimateMPowerC(n, k, m, 1000000, 7);
      EXPECT_LE(std::abs(est.estimate - ExactMPowerC(n, k, m)),
                est.ci99_halfwidth)
          << n << "," << k << "," << m;
    }
  }
}

TEST(ExactTest, IntervalCoverage) {
  const double truth = ExactMPowerC(4, 2, 3);
  int covered = 0;
  const int kTrials = 200;
  for (int t = 0; t < kTrials; ++t) {
    const MeanEstimate est = EstimateMPowerC(4, 2, 3, 5000, 1000 + t);
    covered += std::abs(est.estimate - truth) <= est.ci99_halfwidth;
  }
  EXPECT_GE(covered, kTrials * 95 / 100);
}

TEST(ShardingTest, DeterministicPerSeedAndShards) {
  for (int shards : {1, 3}) {
    const ComponentHistogram a = EstimateComponentDistribution(19, 3, 30001, 9, shards);
    const ComponentHistogram b = EstimateComponentDistribution(19, 3, 30001, 9, shards);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.samples, 30001u);
    uint64_t total = 0;
    for (const auto& [_, c] : a.counts) total += c;
    EXPECT_EQ(total, 30001u);
  }
  const ComponentHistogram x = EstimateComponentDistribution(19, 3, 30000, 9);
  const ComponentHistogram y = EstimateComponentDistribution(19, 3, 30000, 10);
  EXPECT_NE(x.counts, y.counts);
}

TEST(CsvTest, HeaderAndRows) {
  const ComponentHistogram h = EstimateComponentDistribution(19, 3, 1000, 1);
  const std::string csv = HistogramToCsv(h);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "c,count,frequency,lemma4_bound");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(h.counts.size()));
  EXPECT_EQ(csv.back(), '\n');
}

}  // namespace
}  // namespace shufflesum
