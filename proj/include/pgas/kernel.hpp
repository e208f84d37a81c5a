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
#include <cstdint>
#include <string>
#include <vector>

#include "pgas/ancestor_weights.hpp"
#include "pgas/model.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/rng.hpp"

namespace pgas {

enum class Flavor { kPG, kPGAS, kPGBS };

std::string to_string(Flavor flavor);
// Accepts "pg", "pgas", "pgbs" (case-insensitive); throws ConfigError naming kernel.flavor.
Flavor parse_flavor(const std::string& name);

struct KernelConfig {
  std::size_t num_particles = 5;
  Flavor flavor = Flavor::kPGAS;
  TruncationPolicy truncation;
  MhPolicy mh;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SweepDiagnostics {
  std::size_t chosen = 0;                    // k, the index selected at the final time
  std::vector<std::size_t> reference_ancestors;  // a_t^N for t ≥ 1 (entry 0 unused)
  std::vector<bool> ancestor_switched;       // a_t^N ≠ N for t ≥ 1
  std::vector<std::size_t> truncation_levels;  // ℓ used at t ≥ 1 (0 when not evaluated)
  std::size_t factor_evaluations = 0;
  std::size_t mh_accepted = 0;
  std::size_t mh_proposed = 0;
};

struct ConditionalSweep {
  ParticleSystem particles;
  SweepDiagnostics diagnostics;
};

// Conditional SMC with the reference in the last slot. With ancestor sampling (PGAS) a_t^N is
// drawn from the ancestor weights; otherwise (PG, PGBS forward pass) a_t^N = N.
ConditionalSweep conditional_smc(const Model& model, const Trajectory& reference,
                                 const KernelConfig& config, bool ancestor_sampling, Rng& rng);

struct SweepResult {
  Trajectory trajectory;
  SweepDiagnostics diagnostics;
};

// One draw from the kernel selected by config.flavor.
SweepResult kernel_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config,
                         Rng& rng);

SweepResult pgas_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config,
                       Rng& rng);
SweepResult pg_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config,
                     Rng& rng);

// Trajectory drawn from an unconditional sweep; a common starting point for chains.
Trajectory initial_trajectory(const Model& model, std::size_t num_particles, Rng& rng);

}  // namespace pgas
