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
#include "pgas/models/stochastic_volatility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pgas/math.hpp"

namespace pgas::models {

StochasticVolatility::StochasticVolatility(SvParams params, std::vector<double> observations)
    : params_(params), y_(std::move(observations)) {
  if (!(params_.sigma > 0.0)) throw std::invalid_argument("sv: sigma must be positive");
  if (!(std::abs(params_.a) < 1.0)) throw std::invalid_argument("sv: |a| must be < 1");
  stationary_variance_ = params_.sigma * params_.sigma / (1.0 - params_.a * params_.a);
}

double StochasticVolatility::log_transition(std::size_t t, Summary prev, State x) const {
  if (t == 0) return log_normal_pdf(x[0], 0.0, stationary_variance_);
  return log_normal_pdf(x[0], params_.a * prev[0], params_.sigma * params_.sigma);
}

double StochasticVolatility::log_observation(std::size_t t, Summary, State x) const {
  // N(y; 0, e^x) written out to stay finite for large |x|.
  const double y = y_[t];
  return -0.5 * (std::log(2.0 * std::numbers::pi) + x[0] + y * y * std::exp(-x[0]));
}

void StochasticVolatility::sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const {
  out[0] = t == 0 ? rng.normal(0.0, std::sqrt(stationary_variance_)) : rng.normal(params_.a * prev[0], params_.sigma);
}

SvData simulate_sv(const SvParams& params, std::size_t horizon, Rng& rng) {
  SvData data;
  data.x.resize(horizon);
  data.y.resize(horizon);
  const double sd0 = params.sigma / std::sqrt(1.0 - params.a * params.a);
  for (std::size_t t = 0; t < horizon; ++t) {
    data.x[t] = t == 0 ? rng.normal(0.0, sd0) : rng.normal(params.a * data.x[t - 1], params.sigma);
    data.y[t] = rng.normal() * std::exp(0.5 * data.x[t]);
  }
  return data;
}

}  // namespace pgas::models
