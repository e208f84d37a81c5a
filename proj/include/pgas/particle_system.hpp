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

// Complete state of one SMC sweep: particles, ancestor indices, log-weights and the
// per-particle history summaries for every time step.
class ParticleSystem {
 public:
  ParticleSystem(std::size_t num_particles, std::size_t horizon, std::size_t state_dim,
                 std::size_t summary_dim);

  std::size_t num_particles() const { return n_; }
  std::size_t horizon() const { return t_; }
  std::size_t state_dim() const { return dim_; }
  std::size_t summary_dim() const { return sdim_; }

  State state(std::size_t t, std::size_t i) const { return {states_.data() + (t * n_ + i) * dim_, dim_}; }
  std::span<double> state(std::size_t t, std::size_t i) { return {states_.data() + (t * n_ + i) * dim_, dim_}; }

  Summary summary(std::size_t t, std::size_t i) const {
    return {summaries_.data() + (t * n_ + i) * sdim_, sdim_};
  }
  std::span<double> summary(std::size_t t, std::size_t i) {
    return {summaries_.data() + (t * n_ + i) * sdim_, sdim_};
  }

  // Ancestor of particle i at time t (t ≥ 1), an index into time t-1.
  std::size_t ancestor(std::size_t t, std::size_t i) const { return ancestors_[t * n_ + i]; }
  void set_ancestor(std::size_t t, std::size_t i, std::size_t a) { ancestors_[t * n_ + i] = a; }

  std::span<const double> log_weights(std::size_t t) const { return {log_weights_.data() + t * n_, n_}; }
  std::span<double> log_weights(std::size_t t) { return {log_weights_.data() + t * n_, n_}; }

  // Index of the ancestor at time s of particle k at time t (s ≤ t): b_s with b_t = k.
  std::size_t lineage(std::size_t t, std::size_t k, std::size_t s) const;

 private:
  std::size_t n_, t_, dim_, sdim_;
  std::vector<double> states_;
  std::vector<double> summaries_;
  std::vector<std::size_t> ancestors_;
  std::vector<double> log_weights_;
};

// Ancestral path x_{1:T}^{b_{1:T}} of particle k at the final time.
Trajectory extract_path(const ParticleSystem& ps, std::size_t k);

// Ancestral path of particle k at time `last`, i.e. of length last+1.
Trajectory extract_path(const ParticleSystem& ps, std::size_t k, std::size_t last);

}  // namespace pgas
