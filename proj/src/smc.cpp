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
#include "pgas/smc.hpp"

#include <cmath>
#include <vector>

#include "pgas/errors.hpp"
#include "pgas/log_weights.hpp"

namespace pgas {
namespace detail {

void check_finite_state(State x, std::size_t t) {
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericalError("non-finite state", t);
  }
}

namespace {

Summary parent_summary(const Model& model, const ParticleSystem& ps, std::size_t t, std::size_t a,
                       std::vector<double>& scratch) {
  if (t == 0) {
    scratch.resize(model.summary_dim());
    model.initial_summary(scratch);
    return scratch;
  }
  return ps.summary(t - 1, a);
}

}  // namespace

void propagate(const Model& model, ParticleSystem& ps, std::size_t t, std::size_t i, std::size_t a,
               Rng& rng) {
  std::vector<double> scratch;
  const Summary prev = parent_summary(model, ps, t, a, scratch);
  auto x = ps.state(t, i);
  model.sample_proposal(t, prev, x, rng);
  check_finite_state(x, t);
  if (t > 0) ps.set_ancestor(t, i, a);
  model.advance_summary(t, prev, x, ps.summary(t, i));
  ps.log_weights(t)[i] = model.log_weight(t, prev, x);
}

void place(const Model& model, ParticleSystem& ps, std::size_t t, std::size_t i, std::size_t a, State x) {
  std::vector<double> scratch;
  const Summary prev = parent_summary(model, ps, t, a, scratch);
  auto dst = ps.state(t, i);
  std::copy(x.begin(), x.end(), dst.begin());
  if (t > 0) ps.set_ancestor(t, i, a);
  model.advance_summary(t, prev, x, ps.summary(t, i));
  ps.log_weights(t)[i] = model.log_weight(t, prev, x);
}

}  // namespace detail

ParticleSystem smc_sweep(const Model& model, std::size_t num_particles, Rng& rng) {
  const std::size_t horizon = model.horizon();
  ParticleSystem ps(num_particles, horizon, model.state_dim(), model.summary_dim());
  for (std::size_t i = 0; i < num_particles; ++i) detail::propagate(model, ps, 0, i, i, rng);
  for (std::size_t t = 1; t < horizon; ++t) {
    const auto p = normalize_log_weights(ps.log_weights(t - 1), t - 1);
    for (std::size_t i = 0; i < num_particles; ++i) {
      detail::propagate(model, ps, t, i, sample_categorical(p, rng), rng);
    }
  }
  normalize_log_weights(ps.log_weights(horizon - 1), horizon - 1);
  return ps;
}

}  // namespace pgas
