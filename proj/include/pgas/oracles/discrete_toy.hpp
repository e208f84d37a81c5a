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
#include <vector>

#include "pgas/model.hpp"
#include "pgas/rng.hpp"

namespace pgas::oracles {

// Finite-state hidden Markov model with the observations folded into per-time emission
// likelihoods. Small enough (|X| ≤ 3, T ≤ 3) for exact kernel enumeration.
struct DiscreteToyModel {
  std::size_t num_states = 2;
  std::size_t horizon = 2;
  std::vector<double> initial;                   // μ(x)
  std::vector<std::vector<double>> transition;   // P(x' | x), rows x
  std::vector<std::vector<double>> emission;     // e_t(x) = g(y_t | x), rows t
  std::vector<double> initial_proposal;          // r_1(x)
  std::vector<std::vector<double>> proposal;     // r(x' | x)

  // Throws std::invalid_argument when a table has the wrong shape or a row is not a
  // probability vector (within 1e-12).
  void validate() const;
  bool is_bootstrap() const;

  std::size_t num_paths() const;
  // x_t = (index / |X|^t) mod |X|.
  std::vector<std::size_t> decode(std::size_t index) const;
  std::size_t encode(const std::vector<std::size_t>& path) const;

  // Unnormalized target γ_T over all complete paths, and its normalization.
  double gamma(const std::vector<std::size_t>& path) const;
  std::vector<double> posterior() const;
};

// A reproducible 2-state, T = 2 toy; bootstrap proposal unless `perturbed`.
DiscreteToyModel example_toy(bool perturbed_proposal = false);

// Random toy of the given size with a bootstrap or independent random proposal.
DiscreteToyModel random_toy(std::size_t num_states, std::size_t horizon, bool bootstrap, Rng& rng);

// Adapter exposing a toy through the generic Model interface (states stored as doubles).
class DiscreteToyAdapter final : public Model {
 public:
  explicit DiscreteToyAdapter(DiscreteToyModel toy);

  const DiscreteToyModel& toy() const { return toy_; }

  std::size_t horizon() const override { return toy_.horizon; }
  std::size_t state_dim() const override { return 1; }
  std::size_t summary_dim() const override { return 1; }
  bool is_markov() const override { return true; }

  void initial_summary(std::span<double> out) const override { out[0] = 0.0; }
  void advance_summary(std::size_t, Summary, State x, std::span<double> out) const override { out[0] = x[0]; }
  double log_transition(std::size_t t, Summary prev, State x) const override;
  double log_observation(std::size_t t, Summary prev, State x) const override;
  void sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const override;

  bool bootstrap_proposal() const override { return bootstrap_; }
  void sample_proposal(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const override;
  double log_proposal(std::size_t t, Summary prev, State x) const override;

  Trajectory path(std::size_t index) const;
  std::size_t index_of(const Trajectory& path) const;

 private:
  DiscreteToyModel toy_;
  bool bootstrap_;
};

}  // namespace pgas::oracles
