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
#include "pgas/backward.hpp"

#include "pgas/log_weights.hpp"
#include "pgas/smc.hpp"

namespace pgas {

BackwardPath backward_simulate(const Model& model, const ParticleSystem& ps, const TruncationPolicy& truncation,
                               Rng& rng) {
  const std::size_t horizon = ps.horizon();
  const std::size_t last = horizon - 1;
  BackwardPath path;
  path.indices.assign(horizon, 0);
  path.truncation_levels.assign(horizon, 0);
  path.indices[last] = sample_log_categorical(ps.log_weights(last), rng, last);

  // The backward-simulated tail x̃_{t+1:T}, filled in as we go.
  Trajectory tail(horizon, ps.state_dim());
  auto copy_state = [&](std::size_t t, std::size_t i) {
    const State x = ps.state(t, i);
    std::copy(x.begin(), x.end(), tail.state(t).begin());
  };
  copy_state(last, path.indices[last]);

  const MhPolicy exact;
  for (std::size_t t = last; t-- > 0;) {
    const auto draw = draw_ancestor(model, ps, t, TailView(tail, t + 1), truncation, exact, 0, rng);
    path.indices[t] = draw.index;
    path.truncation_levels[t + 1] = draw.level;
    path.factor_evaluations += draw.factor_evaluations;
    copy_state(t, draw.index);
  }
  return path;
}

Trajectory backward_trajectory(const ParticleSystem& ps, const BackwardPath& path) {
  Trajectory out(ps.horizon(), ps.state_dim());
  for (std::size_t t = 0; t < ps.horizon(); ++t) {
    const State x = ps.state(t, path.indices[t]);
    std::copy(x.begin(), x.end(), out.state(t).begin());
  }
  return out;
}

SweepResult pgbs_sweep(const Model& model, const Trajectory& reference, const KernelConfig& config, Rng& rng) {
  auto sweep = conditional_smc(model, reference, config, /*ancestor_sampling=*/false, rng);
  const auto path = backward_simulate(model, sweep.particles, config.truncation, rng);
  sweep.diagnostics.chosen = path.indices.back();
  sweep.diagnostics.factor_evaluations += path.factor_evaluations;
  sweep.diagnostics.truncation_levels = path.truncation_levels;
  return {backward_trajectory(sweep.particles, path), std::move(sweep.diagnostics)};
}

std::vector<Trajectory> ffbsi_smooth(const Model& model, std::size_t num_particles, std::size_t num_trajectories,
                                     const TruncationPolicy& truncation, Rng& rng) {
  const auto ps = smc_sweep(model, num_particles, rng);
  std::vector<Trajectory> out;
  out.reserve(num_trajectories);
  for (std::size_t m = 0; m < num_trajectories; ++m) {
    out.push_back(backward_trajectory(ps, backward_simulate(model, ps, truncation, rng)));
  }
  return out;
}

}  // namespace pgas
