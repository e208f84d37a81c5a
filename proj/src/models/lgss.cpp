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
#include "pgas/models/lgss.hpp"

#include <cmath>
#include <stdexcept>

#include "pgas/math.hpp"

namespace pgas::models {

void LgssParams::validate() const {
  if (!(std::abs(a) < 1.0)) throw std::invalid_argument("lgss: |a| must be < 1");
  if (!(q > 0.0)) throw std::invalid_argument("lgss: q must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("lgss: r must be positive");
}

Lgss::Lgss(LgssParams params, std::vector<double> observations) : params_(params), y_(std::move(observations)) {
  params_.validate();
}

double Lgss::log_transition(std::size_t t, Summary prev, State x) const {
  if (t == 0) return log_normal_pdf(x[0], 0.0, params_.stationary_variance());
  return log_normal_pdf(x[0], params_.a * prev[0], params_.q);
}

double Lgss::log_observation(std::size_t t, Summary, State x) const {
  return log_normal_pdf(y_[t], x[0], params_.r);
}

void Lgss::sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const {
  out[0] = t == 0 ? rng.normal(0.0, std::sqrt(params_.stationary_variance()))
                  : rng.normal(params_.a * prev[0], std::sqrt(params_.q));
}

LgssData simulate_lgss(const LgssParams& params, std::size_t horizon, Rng& rng) {
  params.validate();
  LgssData data;
  data.x.resize(horizon);
  data.y.resize(horizon);
  const double sq = std::sqrt(params.q);
  const double sr = std::sqrt(params.r);
  for (std::size_t t = 0; t < horizon; ++t) {
    data.x[t] = t == 0 ? rng.normal(0.0, std::sqrt(params.stationary_variance()))
                       : rng.normal(params.a * data.x[t - 1], sq);
    data.y[t] = rng.normal(data.x[t], sr);
  }
  return data;
}

}  // namespace pgas::models
