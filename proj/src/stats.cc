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

#include "shufflesum/stats.h"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

namespace shufflesum::stats {

double HoeffdingHalfwidth(uint64_t samples, double confidence) {
  if (samples == 0) throw std::invalid_argument("Hoeffding: samples == 0");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) /
                   (2.0 * static_cast<double>(samples)));
}

double NormalQuantile(double confidence) {
  boost::math::normal_distribution<double> normal;
  return boost::math::quantile(normal, 0.5 + confidence / 2.0);
}

double NormalHalfwidth(double stddev, uint64_t samples, double confidence) {
  if (samples == 0) throw std::invalid_argument("normal CI: samples == 0");
  return NormalQuantile(confidence) * stddev /
         std::sqrt(static_cast<double>(samples));
}

double ChiSquareCritical(double degrees_of_freedom, double alpha) {
  boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double ChiSquareStatistic(std::span<const uint64_t> observed,
                          std::span<const double> expected_probability) {
  if (observed.size() != expected_probability.size()) {
    throw std::invalid_argument("chi-square: size mismatch");
  }
  const double total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), uint64_t{0}));
  double stat = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    const double e = total * expected_probability[i];
    const double d = static_cast<double>(observed[i]) - e;
    stat += d * d / e;
  }
  return stat;
}

double ChiSquareHomogeneity(std::span<const uint64_t> a,
                            std::span<const uint64_t> b,
                            int* degrees_of_freedom) {
  if (a.size() != b.size()) throw std::invalid_argument("chi-square: size");
  const double na =
      static_cast<double>(std::accumulate(a.begin(), a.end(), uint64_t{0}));
  const double nb =
      static_cast<double>(std::accumulate(b.begin(), b.end(), uint64_t{0}));
  const double total = na + nb;
  double stat = 0;
  int cells = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double col = static_cast<double>(a[i] + b[i]);
    if (col == 0) continue;
    ++cells;
    const double ea = na * col / total;
    const double eb = nb * col / total;
    stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
  }
  if (degrees_of_freedom) *degrees_of_freedom = cells - 1;
  return stat;
}

}  // namespace shufflesum::stats
