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

#include "pgas/model.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/rng.hpp"

namespace pgas {

// Standard sequential Monte Carlo sampler with multinomial resampling via ancestor indices.
// Throws DegenerateWeights when every weight at some time is zero, and NumericalError when a
// proposed state is not finite.
ParticleSystem smc_sweep(const Model& model, std::size_t num_particles, Rng& rng);

namespace detail {

// Propagate particle i at time t from ancestor a: samples from the proposal, advances the
// summary and stores the log-weight.
void propagate(const Model& model, ParticleSystem& ps, std::size_t t, std::size_t i, std::size_t a,
               Rng& rng);

// Place a given state x_t in slot i with ancestor a (a is ignored at t = 0).
void place(const Model& model, ParticleSystem& ps, std::size_t t, std::size_t i, std::size_t a, State x);

void check_finite_state(State x, std::size_t t);

}  // namespace detail

}  // namespace pgas
