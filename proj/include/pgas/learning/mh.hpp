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

#include <functional>
#include <span>
#include <vector>

#include "pgas/rng.hpp"

namespace pgas::learning {

struct RwMhResult {
  std::vector<double> value;      // the state after the step
  double log_target = 0.0;        // log target at `value`
  std::vector<double> proposal;
  double log_ratio = 0.0;         // log target(proposal) − log target(current)
  bool accepted = false;
  bool invalid = false;           // target evaluated to NaN at the proposal
};

// One Gaussian random-walk MH step: proposal = current + scale ⊙ ξ. The proposal is symmetric,
// so the acceptance ratio is the target ratio. A NaN target is a rejection. Negative
// scales throw std::invalid_argument.
RwMhResult rw_mh_step(std::span<const double> current, double current_log_target,
                      const std::function<double(std::span<const double>)>& log_target,
                      std::span<const double> scales, Rng& rng);

// Multiplicative scale tuning toward an acceptance window: ×0.7 below `low`, ×1.3 above `high`.
double tune_scale(double scale, double acceptance_rate, double low = 0.25, double high = 0.40);

}  // namespace pgas::learning
