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

#ifndef SHUFFLESUM_ORACLE_H_
#define SHUFFLESUM_ORACLE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "shufflesum/group.h"
#include "shufflesum/protocol.h"
#include "shufflesum/randgraph.h"

namespace shufflesum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact law of one protocol execution on fixed inputs, as integer weights
// over a common denominator. Each equally likely coin outcome (free share
// digits times per-block permutations) contributes weight 1.
struct OutputDistribution {
  int n = 0;
  int k = 0;
  Modulus m{2};
  // flattened transcript (block order, clear block last) -> weight
  std::map<std::vector<uint64_t>, uint64_t> counts;
  uint64_t denominator = 0;

  Rational Probability(const std::vector<uint64_t>& transcript) const;
};

// m^((k-1)n) * (n!)^k: number of coin outcomes of one plain execution.
double OutputEnumerationCost(int n, int k, uint64_t m);

// Exact law of RunIkos(inputs, k). Throws std::invalid_argument when the
// enumeration cost exceeds kEnumerationBudget.
OutputDistribution ExactOutputDistribution(std::span<const GroupElement> inputs,
                                           int k, Modulus m);

// Exact law of RunIkosRandomized(inputs, k). With permute_clear, the clear
// block is additionally passed through an independent uniform shuffle.
OutputDistribution ExactRandomizedOutputDistribution(
    std::span<const GroupElement> inputs, int k, Modulus m, bool permute_clear);

// Half the L1 distance between two exact laws on the same denominator.
Rational TotalVariation(const OutputDistribution& a,
                        const OutputDistribution& b);

// TV between the protocol's outputs on a and b. Rejects inputs with
// different sums or lengths.
Rational ExactTv(std::span<const GroupElement> inputs_a,
                 std::span<const GroupElement> inputs_b, int k, Modulus m);

// E[TV(V(X), V(X'))] over uniform X, X' conditioned on equal sums. The
// m^(2n-1) conditioned pairs are enumerated as X free, the first n-1
// coordinates of X' free and its last coordinate solved. Rejects
// m^(2n-1) * OutputEnumerationCost > kEnumerationBudget.
Rational ExactAvgCaseTv(int n, int k, Modulus m);

enum class CollisionMode {
  kVVsV,    // two independent executions on the same uniform X
  kEEvent,  // unshuffled sharing vs. shuffled independent sharing of X
};

std::string_view CollisionModeName(CollisionMode mode);

// Exact collision probability over uniform X by enumeration. kVVsV sums the
// squared weights of each exact law; kEEvent enumerates X, the independent
// sharing and the shufflers and counts outcomes that are valid sharings of
// X. Rejects m^n * OutputEnumerationCost > kEnumerationBudget.
Rational ExactCollisionProbability(int n, int k, Modulus m, CollisionMode mode);

// Exact E[m^C] over the (n!)^k permutation tuples.
Rational ExactMPowerCRational(int n, int k, uint64_t m);

struct ProbabilityEstimate {
  double estimate = 0;
  double ci999_halfwidth = 0;  // Hoeffding
  uint64_t hits = 0;
  uint64_t samples = 0;
};

// Monte Carlo frequency of the collision event. m == 1 is accepted and
// collides with certainty.
ProbabilityEstimate CollisionProbability(int n, int k, uint64_t m,
                                         uint64_t samples, uint64_t seed,
                                         CollisionMode mode, int shards = 1);

enum class BoundStatus {
  kOk,
  // m^(kn-1) p - 1 < 0: the probability is below the uniform floor m^(1-kn),
  // which only estimation noise can produce.
  kRadicandNegative,
};

struct Lemma1Bound {
  BoundStatus status = BoundStatus::kOk;
  double radicand = 0;  // m^(kn-1) p - 1
  // sqrt(radicand); absent when status == kRadicandNegative
  std::optional<double> value;
};

// sqrt(m^(kn-1) p - 1), computed in log space.
Lemma1Bound Lemma1BoundFor(double collision_prob, int n, int k, uint64_t m);

// m^(kn-1) p - 1 in exact arithmetic.
Rational Lemma1Radicand(const Rational& collision_prob, int n, int k,
                        uint64_t m);

// The graph-route bound sqrt(m^(kn-1) E[m^C] m^(-kn) - 1) =
// sqrt(E[m^(C-1)] - 1), with the radicand accumulated per component count.
Lemma1Bound GraphRouteBound(const ComponentHistogram& h, uint64_t m);

// sqrt(m (e/n)^(k-1)).
double Theorem1Bound(int n, int k, uint64_t m);

enum class Provenance { kExact, kMonteCarlo, kClosedForm, kUnavailable };
std::string_view ProvenanceName(Provenance p);

struct ReportedValue {
  std::optional<double> value;
  Provenance provenance = Provenance::kUnavailable;
  std::optional<double> ci_halfwidth;
  // Interval endpoints; asymmetric for quantities derived through sqrt.
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
  uint64_t samples = 0;
  std::string note;
};

enum class CheckStatus { kHolds, kViolated, kNotApplicable };
std::string_view CheckStatusName(CheckStatus s);

struct InequalityCheck {
  std::string name;
  CheckStatus status = CheckStatus::kNotApplicable;
  std::string detail;
};

struct SecurityReport {
  int n = 0;
  int k = 0;
  uint64_t m = 2;
  uint64_t samples = 0;
  uint64_t seed = 0;
  int shards = 1;
  double sigma = 0;
  bool theorem_preconditions = false;  // n >= 19, k >= 3, sigma >= 1

  ReportedValue exact_avg_tv;
  ReportedValue collision_exact_v;
  ReportedValue collision_exact_e;
  ReportedValue collision_prob_v;
  ReportedValue collision_prob_e;
  ReportedValue m_power_c;        // Monte Carlo E[m^C]
  ReportedValue m_power_c_exact;  // enumerated E[m^C]
  ReportedValue lemma1_bound;
  BoundStatus lemma1_status = BoundStatus::kOk;
  ReportedValue lemma3_bound;
  BoundStatus lemma3_status = BoundStatus::kOk;
  ReportedValue theorem1_bound;
  std::vector<InequalityCheck> checks;

  bool AllHold() const;
  const InequalityCheck* FindCheck(std::string_view name) const;
};

// Assembles every available link of the bound chain for (n, k, m): exact
// quantities where the enumeration budget allows, Monte Carlo estimates from
// `samples` draws otherwise, and the closed form. Never throws for valid
// n, k >= 1 and m >= 2; unavailable entries are marked as such.
SecurityReport VerifyChain(int n, int k, uint64_t m, uint64_t samples,
                           uint64_t seed, int shards = 1);

nlohmann::json SecurityReportToJson(const SecurityReport& r);

}  // namespace shufflesum

#endif  // SHUFFLESUM_ORACLE_H_
