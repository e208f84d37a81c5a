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
#include "pgas/oracles/geometric_decay.hpp"

#include <cmath>
#include <stdexcept>

#include "pgas/ancestor_weights.hpp"
#include "pgas/log_weights.hpp"
#include "pgas/math.hpp"
#include "pgas/smc.hpp"

namespace pgas::oracles {

double GeometricDecayModel::log_transition(std::size_t, Summary, State x) const { return log_normal_pdf(x[0], 0.0, 1.0); }

double GeometricDecayModel::log_observation(std::size_t t, Summary prev, State x) const {
  return amplitude_ * std::exp(-rate_ * static_cast<double>(t)) * (prev[0] + x[0]);
}

void GeometricDecayModel::sample_transition(std::size_t, Summary, std::span<double> out, Rng& rng) const {
  out[0] = rng.normal();
}

KlProfile truncation_kl_profile(const GeometricDecayModel& model, std::size_t num_particles,
                                std::size_t prefix_length, Rng& rng, double floor) {
  const std::size_t horizon = model.horizon();
  if (prefix_length < 1 || prefix_length >= horizon) throw std::invalid_argument("truncation_kl_profile: bad prefix length");
  const std::size_t p = prefix_length - 1;
  ParticleSystem ps(num_particles, horizon, 1, 1);
  for (std::size_t i = 0; i < num_particles; ++i) {
    for (std::size_t t = 0; t <= p; ++t) {
      const double x = rng.normal();
      detail::place(model, ps, t, i, i, State(&x, 1));
    }
    ps.log_weights(p)[i] = 0.0;
  }
  Trajectory reference(horizon, 1);
  for (std::size_t t = 0; t < horizon; ++t) reference.state(t)[0] = rng.normal();

  AncestorWeights weights(model, ps, p, TailView(reference, p + 1));
  const std::size_t max_level = weights.max_level();
  std::vector<std::vector<double>> laws;
  for (std::size_t level = 1; level <= max_level; ++level) laws.push_back(normalize_log_weights(weights.log_weights(level)));

  KlProfile profile;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (std::size_t level = 1; level <= max_level; ++level) {
    const double kl = kl_divergence(laws.back(), laws[level - 1]);
    profile.kl.push_back(kl);
    if (kl > floor) {
      const double x = static_cast<double>(level);
      const double y = std::log(kl);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  if (n >= 2) {
    const double m = static_cast<double>(n);
    profile.slope = (sxy - sx * sy / m) / (sxx - sx * sx / m);
  }
  return profile;
}

}  // namespace pgas::oracles
