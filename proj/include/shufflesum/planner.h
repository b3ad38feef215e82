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

#ifndef SHUFFLESUM_PLANNER_H_
#define SHUFFLESUM_PLANNER_H_

#include <cstdint>
#include <string_view>
#include <vector>

// Closed-form parameter calculator for the k-parallel protocol.
//
// For k shuffled messages per user, n users and group order m, the
// average-case (and, with one extra clear message, worst-case) distance is
// 2^-sigma with
//
//   sigma = ((k - 1) * (log2 n - log2 e) - log2 m) / 2,
//
// guaranteed when n >= 19, k >= 3 and sigma >= 1. Inverting gives the number
// of shuffled messages
//
//   k = ceil((2 sigma + log2 m) / (log2 n - log2 e) + 1).
//
// Every function has a *Log2 form taking log2 n and log2 m directly, so that
// asymptotic sweeps can go past 64-bit integers.
namespace shufflesum {

double SigmaFor(int k, uint64_t n, uint64_t m);
double SigmaForLog2(int k, double log2_n, double log2_m);

struct PreconditionFlag {
  std::string_view label;  // "n>=19" | "k>=3" | "sigma>=1"
  bool ok;
};

struct PlanResult {
  int k_shuffled = 0;
  int total_messages = 0;  // k_shuffled + 1 (one message sent in the clear)
  double requested_sigma = 0;
  double achieved_sigma = 0;
  std::vector<PreconditionFlag> preconditions;

  bool AllPreconditionsOk() const;
};

// Smallest k with SigmaFor(k) >= sigma. Throws std::invalid_argument for
// n <= 2 (the denominator log2 n - log2 e is not positive), sigma <= 0, or
// m < 2. Precondition misses are reported in the result, not thrown.
PlanResult PlanShuffledK(double sigma, uint64_t n, uint64_t m);
PlanResult PlanShuffledKLog2(double sigma, double log2_n, double log2_m);

// The prior analysis needs at least 2 sigma messages.
double BaselineKLowerBound(double sigma);

enum class Precondition {
  kNAtLeast19,
  kKAtLeast3,
  kMBound,  // m <= (n / e)^(k-1) / 2
  kSigmaAtLeast1,
};

std::string_view PreconditionLabel(Precondition p);

// Every violated precondition, in enum order.
std::vector<Precondition> ValidateParams(uint64_t n, int k, uint64_t m);
std::vector<Precondition> ValidateParamsLog2(double log2_n, int k,
                                             double log2_m);

}  // namespace shufflesum

#endif  // SHUFFLESUM_PLANNER_H_
