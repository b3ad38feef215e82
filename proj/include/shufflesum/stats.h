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

#ifndef SHUFFLESUM_STATS_H_
#define SHUFFLESUM_STATS_H_

#include <cstdint>
#include <span>

namespace shufflesum::stats {

// Two-sided Hoeffding halfwidth for the mean of `samples` draws in [0, 1]:
// sqrt(ln(2 / (1 - confidence)) / (2 samples)).
double HoeffdingHalfwidth(uint64_t samples, double confidence);

// Two-sided standard normal quantile z with P(|Z| <= z) = confidence.
double NormalQuantile(double confidence);

// z * stddev / sqrt(samples).
double NormalHalfwidth(double stddev, uint64_t samples, double confidence);

// Upper critical value of the chi-square law: P(X > value) = alpha.
double ChiSquareCritical(double degrees_of_freedom, double alpha);

// Pearson statistic of observed counts against probabilities summing to 1.
double ChiSquareStatistic(std::span<const uint64_t> observed,
                          std::span<const double> expected_probability);

// Pearson statistic of the 2 x c homogeneity table (a, b); cells where both
// counts are zero are dropped. `degrees_of_freedom` receives (#cells - 1).
double ChiSquareHomogeneity(std::span<const uint64_t> a,
                            std::span<const uint64_t> b,
                            int* degrees_of_freedom);

}  // namespace shufflesum::stats

#endif  // SHUFFLESUM_STATS_H_
