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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace shufflesum {
namespace {

constexpr double kLog2E = std::numbers::log2e;
constexpr double kCeilGuard = 0x1p-40;

double Log2(uint64_t v) { return std::log2(static_cast<double>(v)); }

}  // namespace

double SigmaForLog2(int k, double log2_n, double log2_m) {
  return ((k - 1) * (log2_n - kLog2E) - log2_m) / 2.0;
}

double SigmaFor(int k, uint64_t n, uint64_t m) {
  return SigmaForLog2(k, Log2(n), Log2(m));
}

bool PlanResult::AllPreconditionsOk() const {
  for (const auto& p : preconditions) {
    if (!p.ok) return false;
  }
  return true;
}

PlanResult PlanShuffledKLog2(double sigma, double log2_n, double log2_m) {
  const double denom = log2_n - kLog2E;
  if (!(denom > 0)) {
    throw std::invalid_argument("plan: need n >= 3 so that log2 n > log2 e");
  }
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("plan: sigma must be positive and finite");
  }
  if (!(log2_m >= 1)) throw std::invalid_argument("plan: need m >= 2");

  double arg = (2 * sigma + log2_m) / denom + 1;
  if (std::abs(arg - std::round(arg)) < kCeilGuard) arg -= kCeilGuard;
  double k_real = std::ceil(arg);
  if (k_real > 1e9) throw std::invalid_argument("plan: k out of range");
  int k = static_cast<int>(k_real);
  if (k < 1) k = 1;
  // The ceiling can be off by one at integer boundaries; settle minimality
  // against SigmaFor itself.
  while (SigmaForLog2(k, log2_n, log2_m) < sigma) ++k;
  while (k > 1 && SigmaForLog2(k - 1, log2_n, log2_m) >= sigma) --k;

  PlanResult r;
  r.k_shuffled = k;
  r.total_messages = k + 1;
  r.requested_sigma = sigma;
  r.achieved_sigma = SigmaForLog2(k, log2_n, log2_m);
  r.preconditions = {
      {"n>=19", log2_n >= std::log2(19.0)},
      {"k>=3", k >= 3},
      {"sigma>=1", sigma >= 1},
  };
  return r;
}

PlanResult PlanShuffledK(double sigma, uint64_t n, uint64_t m) {
  if (n <= 2) {
    throw std::invalid_argument("plan: need n >= 3 so that log2 n > log2 e");
  }
  if (m < 2) throw std::invalid_argument("plan: need m >= 2");
  PlanResult r = PlanShuffledKLog2(sigma, Log2(n), Log2(m));
  r.preconditions[0].ok = n >= 19;
  return r;
}

double BaselineKLowerBound(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("baseline: sigma must be > 0");
  return 2 * sigma;
}

std::string_view PreconditionLabel(Precondition p) {
  switch (p) {
    case Precondition::kNAtLeast19: return "n>=19";
    case Precondition::kKAtLeast3: return "k>=3";
    case Precondition::kMBound: return "m<=(n/e)^(k-1)/2";
    case Precondition::kSigmaAtLeast1: return "sigma>=1";
  }
  return "?";
}

std::vector<Precondition> ValidateParamsLog2(double log2_n, int k,
                                             double log2_m) {
  std::vector<Precondition> out;
  if (log2_n < std::log2(19.0)) out.push_back(Precondition::kNAtLeast19);
  if (k < 3) out.push_back(Precondition::kKAtLeast3);
  // log2 of (n/e)^(k-1) / 2
  if (log2_m > (k - 1) * (log2_n - kLog2E) - 1) {
    out.push_back(Precondition::kMBound);
  }
  if (SigmaForLog2(k, log2_n, log2_m) < 1) {
    out.push_back(Precondition::kSigmaAtLeast1);
  }
  return out;
}

std::vector<Precondition> ValidateParams(uint64_t n, int k, uint64_t m) {
  std::vector<Precondition> out;
  if (n < 19) out.push_back(Precondition::kNAtLeast19);
  if (k < 3) out.push_back(Precondition::kKAtLeast3);
  const double log2_n = n == 0 ? -INFINITY : Log2(n);
  const double log2_m = m == 0 ? -INFINITY : Log2(m);
  for (Precondition p : ValidateParamsLog2(log2_n, k, log2_m)) {
    if (p == Precondition::kMBound || p == Precondition::kSigmaAtLeast1) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace shufflesum
