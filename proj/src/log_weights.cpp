/*
 * Copyright 2026 The pgas-mc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pgas/log_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas {

double log_sum_exp(std::span<const double> log_weights) {
  double max = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) max = std::max(max, lw);
  if (!std::isfinite(max)) return max;
  double sum = 0.0;
  for (double lw : log_weights) sum += std::exp(lw - max);
  return max + std::log(sum);
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights, std::size_t time_index) {
  const double lse = log_sum_exp(log_weights);
  if (std::isnan(lse)) throw NumericalError("NaN log-weight", time_index);
  if (!std::isfinite(lse)) throw DegenerateWeights(time_index);
  std::vector<double> p(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::exp(log_weights[i] - lse);
    total += p[i];
  }
  // Removes the last-ulp drift of exp/log so the vector sums to one.
  for (double& pi : p) pi /= total;
  return p;
}

std::size_t sample_categorical(std::span<const double> probabilities, Rng& rng) {
  if (probabilities.empty()) throw std::invalid_argument("sample_categorical: empty probability vector");
  double total = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("sample_categorical: invalid probability vector");
    if (p > 0.0) last_positive = i;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("sample_categorical: probabilities do not sum to 1");
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    cumulative += probabilities[i];
    if (u < cumulative) return i;
  }
  // u landed in the rounding gap above the cumulative sum.
  return last_positive;
}

std::size_t sample_log_categorical(std::span<const double> log_weights, Rng& rng, std::size_t time_index) {
  const auto p = normalize_log_weights(log_weights, time_index);
  return sample_categorical(p, rng);
}

}  // namespace pgas
