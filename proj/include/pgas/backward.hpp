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

#include "pgas/ancestor_weights.hpp"
#include "pgas/kernel.hpp"
#include "pgas/model.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/rng.hpp"

namespace pgas {

struct BackwardPath {
  std::vector<std::size_t> indices;  // j_t for t = 0..T-1
  std::vector<std::size_t> truncation_levels;  // ℓ used when attaching the tail starting at t (t ≥ 1)
  std::size_t factor_evaluations = 0;
};

// Backward simulation through a completed particle system: j_T ∝ w_T, then
// P(j_t = i | j_{t+1:T}) ∝ w_t^i γ_T((x^i_{1:t}, x̃_{t+1:T})) / γ_t(x^i_{1:t}), truncated per policy.
BackwardPath backward_simulate(const Model& model, const ParticleSystem& ps,
                               const TruncationPolicy& truncation, Rng& rng);

Trajectory backward_trajectory(const ParticleSystem& ps, const BackwardPath& path);

// PG forward pass (no ancestor sampling) followed by backward simulation.
SweepResult pgbs_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config,
                       Rng& rng);

// Forward filter / backward simulator: one unconditional sweep with N particles and M
// independent backward trajectories.
std::vector<Trajectory> ffbsi_smooth(const Model& model, std::size_t num_particles,
                                     std::size_t num_trajectories, const TruncationPolicy& truncation,
                                     Rng& rng);

}  // namespace pgas
