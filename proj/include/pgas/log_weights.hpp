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
#include <span>
#include <vector>

#include "pgas/rng.hpp"

namespace pgas {

// log Σ exp(lw_i); -inf when every entry is -inf.
double log_sum_exp(std::span<const double> log_weights);

// p_i = exp(lw_i - logsumexp(lw)). Throws DegenerateWeights(time_index) if no entry is finite.
std::vector<double> normalize_log_weights(std::span<const double> log_weights,
                                          std::size_t time_index = 0);

// Inversion sampling: first index whose cumulative probability exceeds u ~ U[0,1).
std::size_t sample_categorical(std::span<const double> probabilities, Rng& rng);

// Same as sample_categorical(normalize_log_weights(lw)).
std::size_t sample_log_categorical(std::span<const double> log_weights, Rng& rng,
                                   std::size_t time_index = 0);

}  // namespace pgas
