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

#include "shufflesum/oracle.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "shufflesum/planner.h"
#include "shufflesum/sharding.h"
#include "shufflesum/sharing.h"
#include "shufflesum/stats.h"
#include "shufflesum/version.h"

namespace shufflesum {
namespace {

using Permutation = std::vector<uint32_t>;

std::vector<Permutation> AllPermutations(int n) {
  std::vector<Permutation> all;
  Permutation pi(n);
  std::iota(pi.begin(), pi.end(), 0u);
  do {
    all.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return all;
}

// Calls f(digits) for every vector of `count` digits in [0, base).
template <typename F>
void ForEachDigits(int count, uint64_t base, F&& f) {
  std::vector<uint64_t> digits(count, 0);
  for (;;) {
    f(digits);
    int pos = 0;
    while (pos < count && ++digits[pos] == base) digits[pos++] = 0;
    if (pos == count) return;
  }
}

// Calls f(choice) for every tuple of `count` indices into `perms`.
template <typename F>
void ForEachPermTuple(const std::vector<Permutation>& perms, int count, F&& f) {
  ForEachDigits(count, perms.size(), f);
}

double Factorial(int n) { return std::tgamma(n + 1.0); }

BigInt Pow(uint64_t base, int exp) {
  BigInt out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

void CheckInputs(std::span<const GroupElement> inputs, int k, Modulus m) {
  if (inputs.empty()) throw std::invalid_argument("oracle: need n >= 1");
  if (k < 1) throw std::invalid_argument("oracle: need k >= 1");
  for (GroupElement x : inputs) {
    if (x.value() >= m.value()) throw std::out_of_range("oracle: input not reduced");
  }
}

void CheckBudget(double cost, const char* what) {
  if (!(cost <= kEnumerationBudget)) {
    std::ostringstream msg;
    msg << what << ": enumeration cost " << cost << " exceeds budget "
        << kEnumerationBudget;
    throw std::invalid_argument(msg.str());
  }
}

// Enumerates every coin outcome of one execution. Free share digits come
// first (plain: k-1 per user; randomized: the clear share U, then k-1 head
// digits), then one permutation per shuffled block.
OutputDistribution Enumerate(std::span<const GroupElement> inputs, int k,
                             Modulus m, bool randomized, bool permute_clear) {
  CheckInputs(inputs, k, m);
  const int n = static_cast<int>(inputs.size());
  const uint64_t mv = m.value();
  const int free_per_user = randomized ? k : k - 1;
  const int stored_blocks = k + (randomized ? 1 : 0);
  const int shuffled_blocks = k + (randomized && permute_clear ? 1 : 0);
  const double cost = std::pow(static_cast<double>(mv), free_per_user * n) *
                      std::pow(Factorial(n), shuffled_blocks);
  CheckBudget(cost, "exact output distribution");

  const std::vector<Permutation> perms = AllPermutations(n);
  OutputDistribution dist;
  dist.n = n;
  dist.k = k;
  dist.m = m;
  dist.denominator = static_cast<uint64_t>(std::llround(cost));

  std::vector<std::vector<GroupElement>> blocks(
      stored_blocks, std::vector<GroupElement>(n));
  std::vector<uint64_t> flat(static_cast<size_t>(stored_blocks) * n);
  ForEachDigits(free_per_user * n, mv, [&](const std::vector<uint64_t>& d) {
    for (int i = 0; i < n; ++i) {
      const uint64_t* own = d.data() + static_cast<size_t>(i) * free_per_user;
      GroupElement target = inputs[i];
      int next = 0;
      if (randomized) {
        const GroupElement u(own[next++], m);
        blocks[k][i] = u;
        target = Sub(target, u, m);
      }
      GroupElement partial;
      for (int j = 0; j + 1 < k; ++j) {
        blocks[j][i] = GroupElement(own[next++], m);
        partial = Add(partial, blocks[j][i], m);
      }
      blocks[k - 1][i] = Sub(target, partial, m);
    }
    ForEachPermTuple(perms, shuffled_blocks, [&](const std::vector<uint64_t>& c) {
      for (int j = 0; j < stored_blocks; ++j) {
        uint64_t* out = flat.data() + static_cast<size_t>(j) * n;
        if (j < shuffled_blocks) {
          const Permutation& pi = perms[c[j]];
          for (int pos = 0; pos < n; ++pos) out[pos] = blocks[j][pi[pos]].value();
        } else {
          for (int pos = 0; pos < n; ++pos) out[pos] = blocks[j][pos].value();
        }
      }
      ++dist.counts[flat];
    });
  });
  return dist;
}

std::vector<GroupElement> ToElements(const std::vector<uint64_t>& digits,
                                     Modulus m) {
  std::vector<GroupElement> out;
  out.reserve(digits.size());
  for (uint64_t d : digits) out.emplace_back(d, m);
  return out;
}

// Sum over the support union of |a - b| (integer weights).
uint64_t L1Weight(const OutputDistribution& a, const OutputDistribution& b) {
  uint64_t total = 0;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      total += ia->second;
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      total += ib->second;
      ++ib;
    } else {
      total += ia->second > ib->second ? ia->second - ib->second
                                       : ib->second - ia->second;
      ++ia;
      ++ib;
    }
  }
  return total;
}

ReportedValue Exact(double v) {
  ReportedValue r;
  r.value = v;
  r.provenance = Provenance::kExact;
  return r;
}

ReportedValue Unavailable(std::string note) {
  ReportedValue r;
  r.note = std::move(note);
  return r;
}

nlohmann::json OptionalNumber(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

Rational OutputDistribution::Probability(
    const std::vector<uint64_t>& transcript) const {
  auto it = counts.find(transcript);
  if (it == counts.end()) return Rational(0);
  return Rational(BigInt(it->second), BigInt(denominator));
}

double OutputEnumerationCost(int n, int k, uint64_t m) {
  return std::pow(static_cast<double>(m), static_cast<double>(k - 1) * n) *
         std::pow(Factorial(n), k);
}

OutputDistribution ExactOutputDistribution(std::span<const GroupElement> inputs,
                                           int k, Modulus m) {
  return Enumerate(inputs, k, m, /*randomized=*/false, /*permute_clear=*/false);
}

OutputDistribution ExactRandomizedOutputDistribution(
    std::span<const GroupElement> inputs, int k, Modulus m, bool permute_clear) {
  return Enumerate(inputs, k, m, /*randomized=*/true, permute_clear);
}

Rational TotalVariation(const OutputDistribution& a,
                        const OutputDistribution& b) {
  if (a.denominator != b.denominator) {
    throw std::invalid_argument("TotalVariation: laws on different denominators");
  }
  return Rational(BigInt(L1Weight(a, b)), 2 * BigInt(a.denominator));
}

Rational ExactTv(std::span<const GroupElement> inputs_a,
                 std::span<const GroupElement> inputs_b, int k, Modulus m) {
  if (inputs_a.size() != inputs_b.size()) {
    throw std::invalid_argument("ExactTv: inputs differ in length");
  }
  if (GroupSum(inputs_a, m) != GroupSum(inputs_b, m)) {
    throw std::invalid_argument("ExactTv: inputs must have equal sums");
  }
  return TotalVariation(ExactOutputDistribution(inputs_a, k, m),
                        ExactOutputDistribution(inputs_b, k, m));
}

Rational ExactAvgCaseTv(int n, int k, Modulus m) {
  if (n < 1 || k < 1) throw std::invalid_argument("ExactAvgCaseTv: n, k >= 1");
  const uint64_t mv = m.value();
  CheckBudget(std::pow(static_cast<double>(mv), 2.0 * n - 1) *
                  OutputEnumerationCost(n, k, mv),
              "exact average-case TV");
  BigInt l1_total = 0;
  uint64_t denominator = 0;
  ForEachDigits(n, mv, [&](const std::vector<uint64_t>& x_digits) {
    const std::vector<GroupElement> x = ToElements(x_digits, m);
    const OutputDistribution dx = ExactOutputDistribution(x, k, m);
    denominator = dx.denominator;
    const GroupElement target = GroupSum(x, m);
    ForEachDigits(n - 1, mv, [&](const std::vector<uint64_t>& head) {
      std::vector<GroupElement> y = ToElements(head, m);
      y.push_back(Sub(target, GroupSum(y, m), m));
      l1_total += L1Weight(dx, ExactOutputDistribution(y, k, m));
    });
  });
  const BigInt pairs = Pow(mv, 2 * n - 1);
  return Rational(l1_total, 2 * BigInt(denominator) * pairs);
}

std::string_view CollisionModeName(CollisionMode mode) {
  return mode == CollisionMode::kVVsV ? "V_VS_V" : "E_EVENT";
}

Rational ExactCollisionProbability(int n, int k, Modulus m, CollisionMode mode) {
  if (n < 1 || k < 1) throw std::invalid_argument("collision: n, k >= 1");
  const uint64_t mv = m.value();
  CheckBudget(std::pow(static_cast<double>(mv), n) *
                  OutputEnumerationCost(n, k, mv),
              "exact collision probability");
  const BigInt inputs = Pow(mv, n);
  const BigInt free_shares = Pow(mv, (k - 1) * n);
  BigInt perm_tuples = 1;
  for (int j = 0; j < k; ++j) perm_tuples *= static_cast<uint64_t>(std::llround(Factorial(n)));

  if (mode == CollisionMode::kVVsV) {
    BigInt squares = 0;
    ForEachDigits(n, mv, [&](const std::vector<uint64_t>& x_digits) {
      const OutputDistribution d =
          ExactOutputDistribution(ToElements(x_digits, m), k, m);
      for (const auto& [_, w] : d.counts) squares += BigInt(w) * w;
    });
    const BigInt denom = free_shares * perm_tuples;
    return Rational(squares, inputs * denom * denom);
  }

  // Event E: R(X) = S(R'(X)). R(X) is a uniform valid sharing of X, so for a
  // fixed shuffled candidate w the event has probability 1/m^((k-1)n) when
  // every user's column of w sums to that user's input, and 0 otherwise.
  const std::vector<Permutation> perms = AllPermutations(n);
  BigInt valid = 0;
  std::vector<std::vector<uint64_t>> shares(k, std::vector<uint64_t>(n));
  ForEachDigits(n, mv, [&](const std::vector<uint64_t>& x) {
    ForEachDigits((k - 1) * n, mv, [&](const std::vector<uint64_t>& d) {
      for (int i = 0; i < n; ++i) {
        unsigned __int128 partial = 0;
        for (int j = 0; j + 1 < k; ++j) {
          shares[j][i] = d[static_cast<size_t>(i) * (k - 1) + j];
          partial += shares[j][i];
        }
        shares[k - 1][i] = static_cast<uint64_t>(
            (x[i] + mv - static_cast<uint64_t>(partial % mv)) % mv);
      }
      ForEachPermTuple(perms, k, [&](const std::vector<uint64_t>& c) {
        for (int i = 0; i < n; ++i) {
          unsigned __int128 column = 0;
          for (int j = 0; j < k; ++j) column += shares[j][perms[c[j]][i]];
          if (static_cast<uint64_t>(column % mv) != x[i]) return;
        }
        ++valid;
      });
    });
  });
  return Rational(valid, inputs * free_shares * free_shares * perm_tuples);
}

Rational ExactMPowerCRational(int n, int k, uint64_t m) {
  const std::vector<uint64_t> counts = ExactComponentCounts(n, k);
  BigInt numerator = 0;
  BigInt total = 0;
  for (int c = 1; c <= n; ++c) {
    numerator += BigInt(counts[c]) * Pow(m, c);
    total += counts[c];
  }
  return Rational(numerator, total);
}

ProbabilityEstimate CollisionProbability(int n, int k, uint64_t m,
                                         uint64_t samples, uint64_t seed,
                                         CollisionMode mode, int shards) {
  if (n < 1 || k < 1) throw std::invalid_argument("collision: n, k >= 1");
  if (samples < 1) throw std::invalid_argument("collision: samples >= 1");
  if (m < 1) throw std::invalid_argument("collision: m >= 1");
  ProbabilityEstimate out;
  out.samples = samples;
  out.ci999_halfwidth = stats::HoeffdingHalfwidth(samples, 0.999);
  if (m == 1) {  // single-element group: every transcript is all zeros
    out.hits = samples;
    out.estimate = 1.0;
    return out;
  }
  const Modulus mod(m);
  const StreamFamily family = mode == CollisionMode::kVVsV
                                  ? StreamFamily::kCollisionVVsV
                                  : StreamFamily::kCollisionEEvent;
  auto parts = RunShards<uint64_t>(
      samples, shards, seed, family, [&](RandomStream& rng, uint64_t count) {
        uint64_t hits = 0;
        std::vector<GroupElement> x(n);
        std::vector<std::vector<GroupElement>> unshuffled(
            k, std::vector<GroupElement>(n));
        for (uint64_t s = 0; s < count; ++s) {
          for (auto& xi : x) xi = UniformElement(rng, mod);
          if (mode == CollisionMode::kVVsV) {
            const Transcript a = RunIkos(x, k, mod, rng);
            const Transcript b = RunIkos(x, k, mod, rng);
            hits += a.blocks == b.blocks;
          } else {
            for (int i = 0; i < n; ++i) {
              const ShareVector sv = Share(x[i], k, mod, rng);
              for (int j = 0; j < k; ++j) unshuffled[j][i] = sv[j];
            }
            hits += RunIkos(x, k, mod, rng).blocks == unshuffled;
          }
        }
        return hits;
      });
  for (uint64_t h : parts) out.hits += h;
  out.estimate = static_cast<double>(out.hits) / static_cast<double>(samples);
  return out;
}

Lemma1Bound Lemma1BoundFor(double collision_prob, int n, int k, uint64_t m) {
  Lemma1Bound out;
  if (!(collision_prob > 0)) {
    out.status = BoundStatus::kRadicandNegative;
    out.radicand = -1;
    return out;
  }
  const double log_m = std::log(static_cast<double>(m));
  const double exponent = (static_cast<double>(k) * n - 1) * log_m;
  double log_scaled = exponent + std::log(collision_prob);
  // Rounding in pow/log can push an exact floor value a few ulps below zero.
  if (std::abs(log_scaled) <= 1e-12 * (1 + std::abs(exponent))) log_scaled = 0;
  out.radicand = std::expm1(log_scaled);
  if (out.radicand < 0) {
    out.status = BoundStatus::kRadicandNegative;
    return out;
  }
  out.value = std::sqrt(out.radicand);
  return out;
}

Rational Lemma1Radicand(const Rational& collision_prob, int n, int k,
                        uint64_t m) {
  return Rational(Pow(m, k * n - 1)) * collision_prob - 1;
}

Lemma1Bound GraphRouteBound(const ComponentHistogram& h, uint64_t m) {
  const double log_m = std::log(static_cast<double>(m));
  double radicand = 0;
  for (const auto& [c, cnt] : h.counts) {
    radicand += h.Frequency(c) * std::expm1((c - 1) * log_m);
  }
  Lemma1Bound out;
  out.radicand = radicand;
  if (radicand < 0) {
    out.status = BoundStatus::kRadicandNegative;
  } else {
    out.value = std::sqrt(radicand);
  }
  return out;
}

double Theorem1Bound(int n, int k, uint64_t m) {
  return std::exp(0.5 * (std::log(static_cast<double>(m)) +
                         (k - 1) * (1.0 - std::log(static_cast<double>(n)))));
}

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kExact: return "exact";
    case Provenance::kMonteCarlo: return "monte-carlo";
    case Provenance::kClosedForm: return "closed-form";
    case Provenance::kUnavailable: return "unavailable";
  }
  return "?";
}

std::string_view CheckStatusName(CheckStatus s) {
  switch (s) {
    case CheckStatus::kHolds: return "holds";
    case CheckStatus::kViolated: return "violated";
    case CheckStatus::kNotApplicable: return "not-applicable";
  }
  return "?";
}

bool SecurityReport::AllHold() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) {
    return c.status == CheckStatus::kViolated;
  });
}

const InequalityCheck* SecurityReport::FindCheck(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

SecurityReport VerifyChain(int n, int k, uint64_t m, uint64_t samples,
                           uint64_t seed, int shards) {
  if (n < 1 || k < 1) throw std::invalid_argument("VerifyChain: n, k >= 1");
  const Modulus mod(m);
  SecurityReport r;
  r.n = n;
  r.k = k;
  r.m = m;
  r.samples = samples;
  r.seed = seed;
  r.shards = shards;
  r.sigma = SigmaFor(k, static_cast<uint64_t>(n), m);
  r.theorem_preconditions = n >= 19 && k >= 3 && r.sigma >= 1;
  auto check = [&r](std::string name, CheckStatus status, std::string detail) {
    r.checks.push_back({std::move(name), status, std::move(detail)});
  };
  auto holds = [](bool ok) {
    return ok ? CheckStatus::kHolds : CheckStatus::kViolated;
  };
  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
  };

  const double output_cost = OutputEnumerationCost(n, k, m);
  const double md = static_cast<double>(m);
  const bool tv_feasible =
      std::pow(md, 2.0 * n - 1) * output_cost <= kEnumerationBudget;
  const bool collision_feasible = std::pow(md, n) * output_cost <= kEnumerationBudget;
  const bool graph_feasible = std::pow(Factorial(n), k) <= kEnumerationBudget;

  std::optional<Rational> exact_tv, exact_p;
  if (tv_feasible) {
    exact_tv = ExactAvgCaseTv(n, k, mod);
    r.exact_avg_tv = Exact(ToDouble(*exact_tv));
  } else {
    r.exact_avg_tv = Unavailable("over enumeration budget");
  }
  if (collision_feasible) {
    exact_p = ExactCollisionProbability(n, k, mod, CollisionMode::kVVsV);
    const Rational pe = ExactCollisionProbability(n, k, mod, CollisionMode::kEEvent);
    r.collision_exact_v = Exact(ToDouble(*exact_p));
    r.collision_exact_e = Exact(ToDouble(pe));
    check("lemma2_exact_identity", holds(*exact_p == pe),
          "Pr[V=V'] = " + exact_p->str() + ", Pr[E] = " + pe.str());
  } else {
    r.collision_exact_v = Unavailable("over enumeration budget");
    r.collision_exact_e = Unavailable("over enumeration budget");
    check("lemma2_exact_identity", CheckStatus::kNotApplicable,
          "over enumeration budget");
  }

  std::optional<Rational> exact_mc;
  if (graph_feasible) {
    exact_mc = ExactMPowerCRational(n, k, m);
    r.m_power_c_exact = Exact(ToDouble(*exact_mc));
  } else {
    r.m_power_c_exact = Unavailable("(n!)^k over enumeration budget");
  }

  // Lemma 1 from the exact collision probability.
  if (exact_p) {
    const Rational radicand = Lemma1Radicand(*exact_p, n, k, m);
    r.lemma1_status = radicand < 0 ? BoundStatus::kRadicandNegative : BoundStatus::kOk;
    r.lemma1_bound = Exact(std::sqrt(std::max(0.0, ToDouble(radicand))));
    if (r.lemma1_status != BoundStatus::kOk) r.lemma1_bound.value.reset();
    if (exact_tv) {
      const bool ok = radicand >= 0 && (*exact_tv) * (*exact_tv) <= radicand;
      check("lemma1_exact", holds(ok),
            "avg TV " + fmt(ToDouble(*exact_tv)) + " <= sqrt(" +
                fmt(ToDouble(radicand)) + ")");
    } else {
      check("lemma1_exact", CheckStatus::kNotApplicable, "avg TV over budget");
    }
  } else {
    check("lemma1_exact", CheckStatus::kNotApplicable, "over enumeration budget");
  }

  // Lemma 3 with exact quantities, and the exact graph-route bound.
  if (exact_mc) {
    const Rational graph_p = *exact_mc / Rational(Pow(m, k * n));
    const Rational radicand = Lemma1Radicand(graph_p, n, k, m);
    r.lemma3_status = radicand < 0 ? BoundStatus::kRadicandNegative : BoundStatus::kOk;
    r.lemma3_bound = Exact(std::sqrt(std::max(0.0, ToDouble(radicand))));
    if (exact_p) {
      check("lemma3_exact", holds(*exact_p <= graph_p),
            "Pr[E] " + fmt(ToDouble(*exact_p)) + " <= E[m^C] m^-kn " +
                fmt(ToDouble(graph_p)));
    } else {
      check("lemma3_exact", CheckStatus::kNotApplicable,
            "collision probability over budget");
    }
  } else {
    check("lemma3_exact", CheckStatus::kNotApplicable, "over enumeration budget");
  }

  // Monte Carlo links.
  if (samples > 0) {
    auto estimate = [&](CollisionMode mode) {
      const ProbabilityEstimate e =
          CollisionProbability(n, k, m, samples, seed, mode, shards);
      ReportedValue v;
      v.value = e.estimate;
      v.provenance = Provenance::kMonteCarlo;
      v.ci_halfwidth = e.ci999_halfwidth;
      v.ci_lower = e.estimate - e.ci999_halfwidth;
      v.ci_upper = e.estimate + e.ci999_halfwidth;
      v.samples = samples;
      v.note = "Hoeffding 99.9%";
      return v;
    };
    r.collision_prob_v = estimate(CollisionMode::kVVsV);
    r.collision_prob_e = estimate(CollisionMode::kEEvent);
    const double pv = *r.collision_prob_v.value;
    const double pe = *r.collision_prob_e.value;
    const double hw = *r.collision_prob_v.ci_halfwidth;
    check("collision_modes_consistent", holds(std::abs(pv - pe) <= 2 * hw),
          "|" + fmt(pv) + " - " + fmt(pe) + "| <= " + fmt(2 * hw));
    if (exact_p) {
      const double p = ToDouble(*exact_p);
      check("collision_mc_covers_exact",
            holds(std::abs(pv - p) <= hw && std::abs(pe - p) <= hw),
            "exact " + fmt(p) + ", estimates " + fmt(pv) + ", " + fmt(pe));
    }

    if (!exact_p) {
      const Lemma1Bound b = Lemma1BoundFor(pv, n, k, m);
      r.lemma1_status = b.status;
      r.lemma1_bound.provenance = Provenance::kMonteCarlo;
      r.lemma1_bound.value = b.value;
      r.lemma1_bound.samples = samples;
      r.lemma1_bound.note = b.status == BoundStatus::kOk
                                ? "from Monte Carlo collision estimate"
                                : "radicand-negative: estimate below m^(1-kn)";
    }

    const ComponentHistogram h =
        EstimateComponentDistribution(n, k, samples, seed, shards);
    const MeanEstimate e = MPowerCFromHistogram(h, m);
    r.m_power_c.value = e.estimate;
    r.m_power_c.provenance = Provenance::kMonteCarlo;
    r.m_power_c.ci_halfwidth = e.ci99_halfwidth;
    r.m_power_c.ci_lower = e.estimate - e.ci99_halfwidth;
    r.m_power_c.ci_upper = e.estimate + e.ci99_halfwidth;
    r.m_power_c.samples = samples;
    r.m_power_c.note = "normal approximation 99%";

    if (!exact_mc) {
      const Lemma1Bound b = GraphRouteBound(h, m);
      const double rad_hw = e.ci99_halfwidth / md;
      r.lemma3_status = b.status;
      r.lemma3_bound.provenance = Provenance::kMonteCarlo;
      r.lemma3_bound.value = b.value;
      r.lemma3_bound.samples = samples;
      r.lemma3_bound.ci_lower = std::sqrt(std::max(0.0, b.radicand - rad_hw));
      r.lemma3_bound.ci_upper = std::sqrt(std::max(0.0, b.radicand + rad_hw));
      r.lemma3_bound.note = "sqrt(E[m^(C-1)] - 1) from component histogram";
    }

    const std::vector<Precondition> missed = ValidateParams(n, k, m);
    const bool lemma4_applies =
        std::none_of(missed.begin(), missed.end(), [](Precondition p) {
          return p != Precondition::kSigmaAtLeast1;
        });
    if (lemma4_applies) {
      const double bound = ExpectationBound(n, k, m);
      check("lemma4_expectation",
            holds(e.estimate - e.ci99_halfwidth <= bound),
            "E[m^C] " + fmt(e.estimate) + " +- " + fmt(e.ci99_halfwidth) +
                " vs " + fmt(bound));
    } else {
      check("lemma4_expectation", CheckStatus::kNotApplicable,
            "needs n>=19, k>=3, m<=(n/e)^(k-1)/2");
    }
  } else {
    r.collision_prob_v = Unavailable("samples == 0");
    r.collision_prob_e = Unavailable("samples == 0");
    r.m_power_c = Unavailable("samples == 0");
  }

  r.theorem1_bound.value = Theorem1Bound(n, k, m);
  r.theorem1_bound.provenance = Provenance::kClosedForm;
  r.theorem1_bound.note = "sqrt(m (e/n)^(k-1)) = 2^-sigma";
  if (r.theorem_preconditions) {
    const double bound = *r.theorem1_bound.value;
    if (exact_tv) {
      check("theorem1_dominance", holds(ToDouble(*exact_tv) <= bound),
            "exact avg TV " + fmt(ToDouble(*exact_tv)) + " <= " + fmt(bound));
    } else if (r.lemma3_bound.value) {
      const double upper = r.lemma3_bound.ci_upper.value_or(*r.lemma3_bound.value);
      check("theorem1_dominance", holds(upper <= bound),
            "graph-route bound upper CI " + fmt(upper) + " <= " + fmt(bound));
    } else {
      check("theorem1_dominance", CheckStatus::kNotApplicable,
            "no TV upper bound available");
    }
  } else {
    check("theorem1_dominance", CheckStatus::kNotApplicable,
          "needs n>=19, k>=3, sigma>=1");
  }
  return r;
}

nlohmann::json SecurityReportToJson(const SecurityReport& r) {
  auto value = [](const ReportedValue& v) {
    nlohmann::json j;
    j["value"] = OptionalNumber(v.value);
    j["provenance"] = ProvenanceName(v.provenance);
    j["ci_halfwidth"] = OptionalNumber(v.ci_halfwidth);
    j["ci_lower"] = OptionalNumber(v.ci_lower);
    j["ci_upper"] = OptionalNumber(v.ci_upper);
    j["samples"] = v.samples;
    j["note"] = v.note;
    return j;
  };
  auto status = [](BoundStatus s) {
    return s == BoundStatus::kOk ? "ok" : "radicand-negative";
  };
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["parameters"] = {{"n", r.n},         {"k", r.k},
                     {"m", r.m},         {"samples", r.samples},
                     {"seed", r.seed},   {"shards", r.shards}};
  j["sigma"] = r.sigma;
  j["theorem_preconditions"] = r.theorem_preconditions;
  j["quantities"] = {
      {"exact_avg_tv", value(r.exact_avg_tv)},
      {"collision_exact_v", value(r.collision_exact_v)},
      {"collision_exact_e", value(r.collision_exact_e)},
      {"collision_prob_v", value(r.collision_prob_v)},
      {"collision_prob_e", value(r.collision_prob_e)},
      {"m_power_c", value(r.m_power_c)},
      {"m_power_c_exact", value(r.m_power_c_exact)},
      {"lemma1_bound", value(r.lemma1_bound)},
      {"lemma3_bound", value(r.lemma3_bound)},
      {"theorem1_bound", value(r.theorem1_bound)},
  };
  j["lemma1_status"] = status(r.lemma1_status);
  j["lemma3_status"] = status(r.lemma3_status);
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"status", CheckStatusName(c.status)},
                           {"detail", c.detail}});
  }
  j["all_hold"] = r.AllHold();
  return j;
}

}  // namespace shufflesum
