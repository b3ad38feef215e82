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

#ifndef SHUFFLESUM_RANDGRAPH_H_
#define SHUFFLESUM_RANDGRAPH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shufflesum/random.h"

namespace shufflesum {

// Union-find with path halving and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(int size);

  int Find(int v);
  // Returns true if a and b were in different sets.
  bool Union(int a, int b);
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int components_;
};

// Multigraph on n vertices generated by k permutations: one edge
// {v, pi_i(v)} per vertex and permutation, self-loops kept. Vertices and
// permutation entries are 0-based. Edges are implicit.
class PermutationMultigraph {
 public:
  // Throws std::invalid_argument unless every permutation is a bijection of
  // {0..n-1}, n >= 1 and k >= 1.
  PermutationMultigraph(int n, std::vector<std::vector<uint32_t>> permutations);

  int n() const { return n_; }
  int k() const { return static_cast<int>(permutations_.size()); }
  const std::vector<std::vector<uint32_t>>& permutations() const {
    return permutations_;
  }

 private:
  int n_;
  std::vector<std::vector<uint32_t>> permutations_;
};

// k i.i.d. uniform permutations (Fisher-Yates). Rejects n < 1 or k < 1.
PermutationMultigraph SampleGraph(int n, int k, RandomStream& rng);

// Number of connected components; multiplicity and self-loops are ignored.
int ConnectedComponents(const PermutationMultigraph& g);

// Component count of the graph generated by `permutations` without
// validating or copying into a PermutationMultigraph.
int CountComponents(int n, const std::vector<std::vector<uint32_t>>& permutations);

struct BoundValue {
  double value;
  bool preconditions_hold;  // n >= 19 and k >= 3
};

// 1.5^(c-1) / c! * (e/n)^((k-1)(c-1)), evaluated in log space.
// Throws std::out_of_range unless 1 <= c <= n.
BoundValue Lemma4ProbabilityBound(int n, int k, int c);

// m + m^2 (n/e)^(1-k). Throws std::invalid_argument unless n >= 19, k >= 3
// and m <= (n/e)^(k-1) / 2.
double ExpectationBound(int n, int k, uint64_t m);

struct ComponentHistogram {
  int n = 0;
  int k = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
  int shards = 1;
  std::map<int, uint64_t> counts;  // component count -> occurrences

  double Frequency(int c) const;
};

// Histogram of C over i.i.d. graphs; a function of (n, k, samples, seed,
// shards) only.
ComponentHistogram EstimateComponentDistribution(int n, int k, uint64_t samples,
                                                 uint64_t seed, int shards = 1);

struct MeanEstimate {
  double estimate = 0;
  double ci99_halfwidth = 0;  // normal approximation
  uint64_t samples = 0;
};

// Sample mean of m^C with a 99% normal-approximation halfwidth, computed in
// log space from the histogram. m^C is heavy-tailed for large m; the interval
// is only trustworthy when m is small relative to (n/e)^(k-1).
MeanEstimate MPowerCFromHistogram(const ComponentHistogram& h, uint64_t m);
MeanEstimate EstimateMPowerC(int n, int k, uint64_t m, uint64_t samples,
                             uint64_t seed, int shards = 1);

inline constexpr double kEnumerationBudget = 1e7;

// counts[c] = number of permutation k-tuples whose graph has c components,
// for c in [0, n] (counts[0] == 0). Enumerates all (n!)^k tuples; throws
// std::invalid_argument when that exceeds kEnumerationBudget.
std::vector<uint64_t> ExactComponentCounts(int n, int k);

// Exact E[m^C] by enumeration.
double ExactMPowerC(int n, int k, uint64_t m);

// c,count,frequency,lemma4_bound rows for every observed c.
std::string HistogramToCsv(const ComponentHistogram& h);

}  // namespace shufflesum

#endif  // SHUFFLESUM_RANDGRAPH_H_
