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
#include "pgas/kernel.hpp"

#include <algorithm>
#include <cctype>

#include "pgas/backward.hpp"
#include "pgas/errors.hpp"
#include "pgas/log_weights.hpp"
#include "pgas/smc.hpp"

namespace pgas {

std::string to_string(Flavor flavor) {
  switch (flavor) {
    case Flavor::kPG: return "pg";
    case Flavor::kPGAS: return "pgas";
    case Flavor::kPGBS: return "pgbs";
  }
  return "unknown";
}

Flavor parse_flavor(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "pg") return Flavor::kPG;
  if (lower == "pgas") return Flavor::kPGAS;
  if (lower == "pgbs") return Flavor::kPGBS;
  throw ConfigError("kernel.flavor: unknown flavor '" + name + "' (expected pg, pgas or pgbs)");
}

void KernelConfig::validate() const {
  if (num_particles < 1) throw ConfigError("kernel.N must be >= 1");
  truncation.validate();
  mh.validate(num_particles);
}

ConditionalSweep conditional_smc(const Model& model, const Trajectory& reference, const KernelConfig& config,
                                 bool ancestor_sampling, Rng& rng) {
  const std::size_t n = config.num_particles;
  const std::size_t horizon = model.horizon();
  if (n < 1) throw ConfigError("kernel.N must be >= 1");
  if (reference.length() != horizon || reference.dim() != model.state_dim()) {
    throw std::invalid_argument("conditional_smc: reference does not match the model dimensions");
  }
  const std::size_t ref = n - 1;

  ConditionalSweep sweep{ParticleSystem(n, horizon, model.state_dim(), model.summary_dim()), {}};
  ParticleSystem& ps = sweep.particles;
  SweepDiagnostics& diag = sweep.diagnostics;
  diag.reference_ancestors.assign(horizon, ref);
  diag.ancestor_switched.assign(horizon, false);
  diag.truncation_levels.assign(horizon, 0);

  for (std::size_t i = 0; i < ref; ++i) detail::propagate(model, ps, 0, i, i, rng);
  detail::place(model, ps, 0, ref, ref, reference.state(0));

  for (std::size_t t = 1; t < horizon; ++t) {
    const auto p = normalize_log_weights(ps.log_weights(t - 1), t - 1);
    for (std::size_t i = 0; i < ref; ++i) detail::propagate(model, ps, t, i, sample_categorical(p, rng), rng);

    std::size_t a = ref;
    if (ancestor_sampling) {
      const auto draw = draw_ancestor(model, ps, t - 1, TailView(reference, t), config.truncation, config.mh,
                                      ref, rng);
      a = draw.index;
      diag.truncation_levels[t] = draw.level;
      diag.factor_evaluations += draw.factor_evaluations;
      diag.mh_accepted += draw.mh_accepted;
      diag.mh_proposed += draw.mh_proposed;
    }
    detail::place(model, ps, t, ref, a, reference.state(t));
    diag.reference_ancestors[t] = a;
    diag.ancestor_switched[t] = a != ref;
  }
  return sweep;
}

SweepResult pgas_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config, Rng& rng) {
  auto sweep = conditional_smc(model, reference, config, /*ancestor_sampling=*/true, rng);
  const std::size_t last = model.horizon() - 1;
  const std::size_t k = sample_log_categorical(sweep.particles.log_weights(last), rng, last);
  sweep.diagnostics.chosen = k;
  return {extract_path(sweep.particles, k), std::move(sweep.diagnostics)};
}

SweepResult pg_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config, Rng& rng) {
  auto sweep = conditional_smc(model, reference, config, /*ancestor_sampling=*/false, rng);
  const std::size_t last = model.horizon() - 1;
  const std::size_t k = sample_log_categorical(sweep.particles.log_weights(last), rng, last);
  sweep.diagnostics.chosen = k;
  return {extract_path(sweep.particles, k), std::move(sweep.diagnostics)};
}

SweepResult kernel_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config, Rng& rng) {
  switch (config.flavor) {
    case Flavor::kPG: return pg_sweep(model, reference, config, rng);
    case Flavor::kPGAS: return pgas_sweep(model, reference, config, rng);
    case Flavor::kPGBS: return pgbs_sweep(model, reference, config, rng);
  }
  throw ConfigError("kernel.flavor: invalid value");
}

Trajectory initial_trajectory(const Model& model, std::size_t num_particles, Rng& rng) {
  const auto ps = smc_sweep(model, num_particles, rng);
  const std::size_t last = model.horizon() - 1;
  return extract_path(ps, sample_log_categorical(ps.log_weights(last), rng, last));
}

}  // namespace pgas
