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
#include "pgas/learning/gibbs.hpp"

#include <stdexcept>

#include "pgas/errors.hpp"

namespace pgas::learning {

std::vector<double> ParameterModel::sufficient_statistics(const Trajectory&) const {
  throw std::logic_error("parameter model has no sufficient statistics");
}

std::vector<double> ParameterModel::maximize(std::span<const double>) const {
  throw std::logic_error("parameter model has no maximizer");
}

void GibbsConfig::validate() const {
  if (iterations < 1) throw ConfigError("driver.iterations must be >= 1");
  if (burn_in >= iterations) throw ConfigError("driver.burn_in must be smaller than driver.iterations");
  kernel.validate();
}

std::vector<double> ChainRecord::parameter(std::size_t j, bool after_burn_in) const {
  std::vector<double> out;
  for (std::size_t n = after_burn_in ? burn_in : 0; n < theta.size(); ++n) out.push_back(theta[n][j]);
  return out;
}

double ChainRecord::update_rate(std::size_t t) const {
  if (theta.size() < 2) return 0.0;
  return static_cast<double>(state_changes[t]) / static_cast<double>(theta.size() - 1);
}

ChainRecord gibbs_run(ParameterModel& params, const GibbsConfig& config, std::vector<double> theta0, Trajectory x0,
                      Rng& rng, const IterationSink& sink) {
  config.validate();
  ChainRecord rec;
  rec.names = params.names();
  rec.seed = rng.seed();
  rec.burn_in = config.burn_in;

  std::vector<double> theta = std::move(theta0);
  auto model = params.build(theta);
  const std::size_t horizon = model->horizon();
  Trajectory x = x0.length() > 0 ? std::move(x0) : initial_trajectory(*model, config.kernel.num_particles, rng);
  rec.state_changes.assign(horizon, 0);
  rec.ancestor_switches.assign(horizon, 0);
  rec.truncation_level_sum.assign(horizon, 0);
  rec.theta.reserve(config.iterations);

  for (std::size_t n = 1; n <= config.iterations; ++n) {
    params.set_adapting(n <= config.burn_in);
    SweepResult sweep;
    try {
      sweep = kernel_sweep(*model, x, config.kernel, rng);
      theta = params.sample_posterior(theta, sweep.trajectory, rng);
      model = params.build(theta);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw IterationError(n, e.what());
    }
    if (n >= 2) {
      for (std::size_t t = 0; t < horizon; ++t)
        if (sweep.trajectory[t] != x[t]) ++rec.state_changes[t];
    }
    for (std::size_t t = 0; t < horizon; ++t) {
      if (sweep.diagnostics.ancestor_switched[t]) ++rec.ancestor_switches[t];
      rec.truncation_level_sum[t] += sweep.diagnostics.truncation_levels[t];
    }
    rec.factor_evaluations += sweep.diagnostics.factor_evaluations;
    rec.mh_accepted += sweep.diagnostics.mh_accepted;
    rec.mh_proposed += sweep.diagnostics.mh_proposed;

    x = std::move(sweep.trajectory);
    rec.theta.push_back(theta);
    if (config.keep_trajectories) rec.trajectories.push_back(x);
    if (sink) sink({n, &rec.theta.back(), &x, &sweep.diagnostics});
  }
  params.set_adapting(false);
  rec.last = std::move(x);
  return rec;
}

}  // namespace pgas::learning
