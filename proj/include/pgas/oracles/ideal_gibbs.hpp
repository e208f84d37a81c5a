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

#include "pgas/learning/gibbs.hpp"
#include "pgas/learning/lgss.hpp"

namespace pgas::oracles {

// Gibbs sampler for the scalar LGSS with the state block drawn exactly (FFBS) and the same
// θ-step as the particle Gibbs drivers. The record has the same layout as gibbs_run's.
learning::ChainRecord ideal_gibbs_lgss(const std::vector<double>& y, const learning::LgssPrior& prior,
                                       std::size_t iterations, std::size_t burn_in, models::LgssParams theta0,
                                       Rng& rng, bool keep_trajectories = false);

}  // namespace pgas::oracles
