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
#include "pgas/model.hpp"

#include <stdexcept>

namespace pgas {

Trajectory::Trajectory(std::size_t length, std::size_t dim, std::vector<double> values)
    : length_(length), dim_(dim), values_(std::move(values)) {
  if (values_.size() != length_ * dim_) throw std::invalid_argument("Trajectory: size mismatch");
}

double Model::log_weight(std::size_t t, Summary prev, State x) const {
  if (bootstrap_proposal()) return log_observation(t, prev, x);
  return log_transition(t, prev, x) + log_observation(t, prev, x) - log_proposal(t, prev, x);
}

double Model::log_factor_and_advance(std::size_t t, Summary prev, State x, std::span<double> out) const {
  const double factor = log_transition(t, prev, x) + log_observation(t, prev, x);
  advance_summary(t, prev, x, out);
  return factor;
}

double Model::log_gamma(const Trajectory& path, std::size_t length) const {
  std::vector<double> summary(summary_dim());
  std::vector<double> next(summary_dim());
  initial_summary(summary);
  double total = 0.0;
  for (std::size_t t = 0; t < length; ++t) {
    const State x = path.state(t);
    total += log_transition(t, summary, x) + log_observation(t, summary, x);
    advance_summary(t, summary, x, next);
    summary.swap(next);
  }
  return total;
}

std::vector<double> Model::summary_of(const Trajectory& path, std::size_t length) const {
  std::vector<double> summary(summary_dim());
  std::vector<double> next(summary_dim());
  initial_summary(summary);
  for (std::size_t t = 0; t < length; ++t) {
    advance_summary(t, summary, path.state(t), next);
    summary.swap(next);
  }
  return summary;
}

}  // namespace pgas
