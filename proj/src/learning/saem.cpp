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
#include "pgas/learning/saem.hpp"

#include <cmath>
#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas::learning {

void saem_update(SaemState& state, std::span<const double> s, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("saem_update: step size must lie in (0, 1]");
  if (state.statistics.empty()) {
    if (gamma != 1.0) throw std::invalid_argument("saem_update: first step needs gamma = 1");
    state.statistics.assign(s.begin(), s.end());
  } else {
    if (state.statistics.size() != s.size()) throw std::invalid_argument("saem_update: statistic size mismatch");
    for (std::size_t j = 0; j < s.size(); ++j) state.statistics[j] = (1.0 - gamma) * state.statistics[j] + gamma * s[j];
  }
  ++state.iteration;
}

double saem_step_size(std::size_t n, double exponent) {
  if (n < 1) throw std::invalid_argument("saem_step_size: n must be >= 1");
  return std::pow(static_cast<double>(n), -exponent);
}

void SaemConfig::validate() const {
  if (iterations < 1) throw ConfigError("driver.iterations must be >= 1");
  if (!(exponent > 0.5 && exponent <= 1.0)) throw ConfigError("driver.step_exponent must lie in (0.5, 1]");
  kernel.validate();
}

SaemTrace psaem_run(const ParameterModel& params, const SaemConfig& config, std::vector<double> theta0, Rng& rng,
                    const IterationSink& sink) {
  config.validate();
  SaemTrace trace;
  trace.names = params.names();
  std::vector<double> theta = std::move(theta0);
  auto model = params.build(theta);
  Trajectory x = initial_trajectory(*model, config.kernel.num_particles, rng);
  for (std::size_t n = 1; n <= config.iterations; ++n) {
    SweepResult sweep;
    try {
      sweep = kernel_sweep(*model, x, config.kernel, rng);
      saem_update(trace.state, params.sufficient_statistics(sweep.trajectory), saem_step_size(n, config.exponent));
      theta = params.maximize(trace.state.statistics);
      model = params.build(theta);
    } catch (const std::exception& e) {
      throw IterationError(n, e.what());
    }
    x = std::move(sweep.trajectory);
    trace.theta.push_back(theta);
    if (sink) sink({n, &trace.theta.back(), &x, &sweep.diagnostics});
  }
  return trace;
}

}  // namespace pgas::learning
