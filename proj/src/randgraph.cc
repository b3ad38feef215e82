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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shufflesum/sharding.h"

namespace shufflesum {

DisjointSet::DisjointSet(int size)
    : parent_(size), size_(size, 1), components_(size) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSet::Find(int v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool DisjointSet::Union(int a, int b) {
  a = Find(a);
  b = Find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

PermutationMultigraph::PermutationMultigraph(
    int n, std::vector<std::vector<uint32_t>> permutations)
    : n_(n), permutations_(std::move(permutations)) {
  if (n_ < 1) throw std::invalid_argument("graph needs n >= 1 vertices");
  if (permutations_.empty()) {
    throw std::invalid_argument("graph needs k >= 1 permutations");
  }
  std::vector<char> seen(n_);
  for (const auto& pi : permutations_) {
    if (static_cast<int>(pi.size()) != n_) {
      throw std::invalid_argument("permutation length differs from n");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (uint32_t v : pi) {
      if (v >= static_cast<uint32_t>(n_) || seen[v]) {
        throw std::invalid_argument("not a bijection of {0..n-1}");
      }
      seen[v] = 1;
    }
  }
}

PermutationMultigraph SampleGraph(int n, int k, RandomStream& rng) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("SampleGraph: need n >= 1 and k >= 1");
  }
  std::vector<std::vector<uint32_t>> perms(k, std::vector<uint32_t>(n));
  for (auto& pi : perms) {
    std::iota(pi.begin(), pi.end(), 0u);
    ShuffleInPlace(std::span<uint32_t>(pi), rng);
  }
  return PermutationMultigraph(n, std::move(perms));
}

int CountComponents(int n,
                    const std::vector<std::vector<uint32_t>>& permutations) {
  DisjointSet dsu(n);
  for (const auto& pi : permutations) {
    for (int v = 0; v < n; ++v) dsu.Union(v, static_cast<int>(pi[v]));
  }
  return dsu.components();
}

int ConnectedComponents(const PermutationMultigraph& g) {
  return CountComponents(g.n(), g.permutations());
}

BoundValue Lemma4ProbabilityBound(int n, int k, int c) {
  if (c < 1 || c > n) {
    throw std::out_of_range("Lemma4ProbabilityBound: need 1 <= c <= n");
  }
  const double cm1 = c - 1;
  const double log_bound = cm1 * std::log(1.5) - std::lgamma(c + 1.0) +
                           (k - 1) * cm1 * (1.0 - std::log(static_cast<double>(n)));
  return BoundValue{std::exp(log_bound), n >= 19 && k >= 3};
}

double ExpectationBound(int n, int k, uint64_t m) {
  if (n < 19 || k < 3) {
    throw std::invalid_argument("ExpectationBound: need n >= 19 and k >= 3");
  }
  const double log_ratio = (k - 1) * (std::log(static_cast<double>(n)) - 1.0);
  const double md = static_cast<double>(m);
  if (std::log(md) > log_ratio - std::log(2.0)) {
    throw std::invalid_argument(
        "ExpectationBound: need m <= (n/e)^(k-1) / 2");
  }
  return md + md * md * std::exp(-log_ratio);
}

double ComponentHistogram::Frequency(int c) const {
  auto it = counts.find(c);
  if (it == counts.end() || samples == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(samples);
}

ComponentHistogram EstimateComponentDistribution(int n, int k, uint64_t samples,
                                                 uint64_t seed, int shards) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("component estimate: need n >= 1, k >= 1");
  }
  if (samples < 1) throw std::invalid_argument("component estimate: samples");
  using Counts = std::map<int, uint64_t>;
  auto parts = RunShards<Counts>(
      samples, shards, seed, StreamFamily::kGraphs,
      [n, k](RandomStream& rng, uint64_t count) {
        Counts local;
        std::vector<std::vector<uint32_t>> perms(k, std::vector<uint32_t>(n));
        for (uint64_t s = 0; s < count; ++s) {
          for (auto& pi : perms) {
            std::iota(pi.begin(), pi.end(), 0u);
            ShuffleInPlace(std::span<uint32_t>(pi), rng);
          }
          ++local[CountComponents(n, perms)];
        }
        return local;
      });
  ComponentHistogram h;
  h.n = n;
  h.k = k;
  h.samples = samples;
  h.seed = seed;
  h.shards = shards;
  for (const auto& part : parts) {
    for (const auto& [c, cnt] : part) h.counts[c] += cnt;
  }
  return h;
}

MeanEstimate MPowerCFromHistogram(const ComponentHistogram& h, uint64_t m) {
  if (m < 1) throw std::invalid_argument("MPowerC: m must be >= 1");
  if (h.samples == 0) throw std::invalid_argument("MPowerC: empty histogram");
  const double log_m = std::log(static_cast<double>(m));
  const double total = static_cast<double>(h.samples);
  // log mean via log-sum-exp over the observed component counts
  double max_term = -INFINITY;
  for (const auto& [c, cnt] : h.counts) {
    max_term = std::max(max_term, std::log(cnt / total) + c * log_m);
  }
  double acc = 0;
  for (const auto& [c, cnt] : h.counts) {
    acc += std::exp(std::log(cnt / total) + c * log_m - max_term);
  }
  const double log_mean = max_term + std::log(acc);
  // variance relative to mean^2, so nothing overflows before the final scale
  double rel_var = 0;
  for (const auto& [c, cnt] : h.counts) {
    const double ratio = std::expm1(c * log_m - log_mean);
    rel_var += (cnt / total) * ratio * ratio;
  }
  if (h.samples > 1) rel_var *= total / (total - 1);
  MeanEstimate out;
  out.samples = h.samples;
  out.estimate = std::exp(log_mean);
  out.ci99_halfwidth =
      m == 1 ? 0.0
             : out.estimate * std::sqrt(rel_var) * 2.5758293035489004 /
                   std::sqrt(total);
  return out;
}

MeanEstimate EstimateMPowerC(int n, int k, uint64_t m, uint64_t samples,
                             uint64_t seed, int shards) {
  return MPowerCFromHistogram(
      EstimateComponentDistribution(n, k, samples, seed, shards), m);
}

std::vector<uint64_t> ExactComponentCounts(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("exact C: need n, k >= 1");
  const double cost = std::pow(std::tgamma(n + 1.0), k);
  if (cost > kEnumerationBudget) {
    throw std::invalid_argument("exact C: (n!)^k exceeds enumeration budget");
  }
  std::vector<std::vector<uint32_t>> all;
  std::vector<uint32_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0u);
  do {
    all.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));

  std::vector<uint64_t> counts(n + 1, 0);
  std::vector<size_t> index(k, 0);
  std::vector<std::vector<uint32_t>> tuple(k, all[0]);
  for (;;) {
    ++counts[CountComponents(n, tuple)];
    int pos = 0;
    while (pos < k && ++index[pos] == all.size()) {
      index[pos] = 0;
      tuple[pos] = all[0];
      ++pos;
    }
    if (pos == k) break;
    tuple[pos] = all[index[pos]];
  }
  return counts;
}

double ExactMPowerC(int n, int k, uint64_t m) {
  const std::vector<uint64_t> counts = ExactComponentCounts(n, k);
  const double total = std::pow(std::tgamma(n + 1.0), k);
  double acc = 0;
  for (int c = 1; c <= n; ++c) {
    acc += static_cast<double>(counts[c]) / total *
           std::pow(static_cast<double>(m), c);
  }
  return acc;
}

std::string HistogramToCsv(const ComponentHistogram& h) {
  std::ostringstream out;
  out.precision(17);
  out << "c,count,frequency,lemma4_bound\n";
  for (const auto& [c, cnt] : h.counts) {
    out << c << ',' << cnt << ',' << h.Frequency(c) << ','
        << Lemma4ProbabilityBound(h.n, h.k, c).value << '\n';
  }
  return out.str();
}

}  // namespace shufflesum
