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
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pgas/model.hpp"

namespace pgas {

// Biased-normalized autocorrelations ρ(0..max_lag) of series − center. Throws
// std::invalid_argument when the series is not longer than max_lag or has zero variance
// about the center.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag, double center);
// Centered at the sample mean.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

// Fraction of consecutive iterations in which the value changes (exact comparison).
double update_rate(std::span<const double> values);
// Update rate of coordinate t (first state component) over a chain of trajectories.
double update_rate(const std::vector<Trajectory>& chain, std::size_t t);

// ε_n = sqrt((1/T) Σ_t (mean of the first n estimates of x_t − truth_t)²) for n = 1..size.
// Each estimate is a vector of length T.
std::vector<double> running_rmse(const std::vector<std::vector<double>>& estimates, std::span<const double> truth);

// Streaming form of running_rmse.
class RunningRmse {
 public:
  explicit RunningRmse(std::vector<double> truth);

  // Adds one draw and returns the updated ε_n.
  double add(std::span<const double> estimate);
  double value() const;
  std::size_t count() const { return count_; }
  const std::vector<double>& running_mean() const { return sum_; }

 private:
  std::vector<double> truth_;
  std::vector<double> sum_;  // running mean
  std::size_t count_ = 0;
};

// 1 / Σ p_i² of a normalized weight vector.
double effective_sample_size(std::span<const double> p);

double mean(std::span<const double> values);
// Unbiased sample variance.
double variance(std::span<const double> values);
// Standard error of the mean from non-overlapping batch means.
double batch_means_standard_error(std::span<const double> values, std::size_t num_batches = 50);
// Empirical quantile with linear interpolation, q ∈ [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace pgas
