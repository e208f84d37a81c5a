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
#include "pgas/learning/mh.hpp"

#include <cmath>
#include <stdexcept>

namespace pgas::learning {

RwMhResult rw_mh_step(std::span<const double> current, double current_log_target,
                      const std::function<double(std::span<const double>)>& log_target,
                      std::span<const double> scales, Rng& rng) {
  if (scales.size() != current.size()) throw std::invalid_argument("rw_mh_step: scale dimension mismatch");
  RwMhResult out;
  out.proposal.resize(current.size());
  for (std::size_t j = 0; j < current.size(); ++j) {
    if (!(scales[j] >= 0.0)) throw std::invalid_argument("rw_mh_step: proposal scales must be non-negative");
    out.proposal[j] = current[j] + scales[j] * rng.normal();
  }
  const double proposed = log_target(out.proposal);
  out.log_ratio = proposed - current_log_target;
  out.invalid = std::isnan(proposed);
  out.accepted = !out.invalid && std::log(rng.uniform()) < out.log_ratio;
  if (out.accepted) {
    out.value = out.proposal;
    out.log_target = proposed;
  } else {
    out.value.assign(current.begin(), current.end());
    out.log_target = current_log_target;
  }
  return out;
}

double tune_scale(double scale, double acceptance_rate, double low, double high) {
  if (acceptance_rate < low) return scale * 0.7;
  if (acceptance_rate > high) return scale * 1.3;
  return scale;
}

}  // namespace pgas::learning
