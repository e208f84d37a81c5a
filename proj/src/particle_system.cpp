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
#include "pgas/particle_system.hpp"

#include <stdexcept>

namespace pgas {

ParticleSystem::ParticleSystem(std::size_t num_particles, std::size_t horizon, std::size_t state_dim,
                               std::size_t summary_dim)
    : n_(num_particles),
      t_(horizon),
      dim_(state_dim),
      sdim_(summary_dim),
      states_(num_particles * horizon * state_dim),
      summaries_(num_particles * horizon * summary_dim),
      ancestors_(num_particles * horizon),
      log_weights_(num_particles * horizon) {
  if (n_ == 0 || t_ == 0) throw std::invalid_argument("ParticleSystem: N and T must be positive");
  for (std::size_t i = 0; i < n_; ++i) ancestors_[i] = i;
}

std::size_t ParticleSystem::lineage(std::size_t t, std::size_t k, std::size_t s) const {
  std::size_t b = k;
  for (std::size_t u = t; u > s; --u) b = ancestor(u, b);
  return b;
}

Trajectory extract_path(const ParticleSystem& ps, std::size_t k, std::size_t last) {
  if (k >= ps.num_particles()) throw std::out_of_range("extract_path: particle index out of range");
  if (last >= ps.horizon()) throw std::out_of_range("extract_path: time index out of range");
  Trajectory path(last + 1, ps.state_dim());
  std::size_t b = k;
  for (std::size_t t = last + 1; t-- > 0;) {
    const State x = ps.state(t, b);
    std::copy(x.begin(), x.end(), path.state(t).begin());
    if (t > 0) b = ps.ancestor(t, b);
  }
  return path;
}

Trajectory extract_path(const ParticleSystem& ps, std::size_t k) {
  return extract_path(ps, k, ps.horizon() - 1);
}

}  // namespace pgas
