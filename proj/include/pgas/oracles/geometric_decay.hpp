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

// Synthetic non-Markovian target whose ancestor-weight factors decay geometrically:
//
//   x_t ~ N(0, 1) i.i.d.,   log g_t(x_{1:t}) = A e^{−c t} m_t,   m_t = Σ_{j≤t} x_j.
//
// Attached to a prefix with running sum m, the factor at time s contributes A e^{−c s} m, so
// the truncated ancestor law P̃_ℓ approaches P at rate e^{−c ℓ}.
class GeometricDecayModel final : public Model {
 public:
  GeometricDecayModel(std::size_t horizon, double amplitude, double rate)
      : horizon_(horizon), amplitude_(amplitude), rate_(rate) {}

  double rate() const { return rate_; }

  std::size_t horizon() const override { return horizon_; }
  std::size_t state_dim() const override { return 1; }
  std::size_t summary_dim() const override { return 1; }
  bool is_markov() const override { return false; }

  void initial_summary(std::span<double> out) const override { out[0] = 0.0; }
  void advance_summary(std::size_t, Summary prev, State x, std::span<double> out) const override {
    out[0] = prev[0] + x[0];
  }
  double log_transition(std::size_t t, Summary prev, State x) const override;
  double log_observation(std::size_t t, Summary prev, State x) const override;
  void sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const override;

 private:
  std::size_t horizon_;
  double amplitude_;
  double rate_;
};

struct KlProfile {
  std::vector<double> kl;  // KL(P ‖ P̃_ℓ) for ℓ = 1..ℓ_max
  double slope = 0.0;      // least-squares slope of log KL against ℓ over the entries above `floor`
};

// Draws N prefixes of length `prefix_length` and a reference tail from the model, then compares
// the truncated ancestor laws with the exact one.
KlProfile truncation_kl_profile(const GeometricDecayModel& model, std::size_t num_particles,
                                std::size_t prefix_length, Rng& rng, double floor = 1e-13);

}  // namespace pgas::oracles
