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
#include "pgas/oracles/ideal_gibbs.hpp"

#include "pgas/errors.hpp"
#include "pgas/oracles/kalman.hpp"

namespace pgas::oracles {

learning::ChainRecord ideal_gibbs_lgss(const std::vector<double>& y, const learning::LgssPrior& prior,
                                       std::size_t iterations, std::size_t burn_in, models::LgssParams theta0,
                                       Rng& rng, bool keep_trajectories) {
  if (iterations < 1 || burn_in >= iterations) throw ConfigError("driver.burn_in must be smaller than driver.iterations");
  learning::LgssParameterModel params(y, prior);
  learning::ChainRecord rec;
  rec.names = params.names();
  rec.seed = rng.seed();
  rec.burn_in = burn_in;
  rec.state_changes.assign(y.size(), 0);
  rec.ancestor_switches.assign(y.size(), 0);
  rec.truncation_level_sum.assign(y.size(), 0);
  models::LgssParams theta = theta0;
  std::vector<double> prev;
  for (std::size_t n = 1; n <= iterations; ++n) {
    const auto x = lgss_ffbs(theta, y, rng);
    theta = params.sample(theta, x, rng);
    if (!prev.empty())
      for (std::size_t t = 0; t < y.size(); ++t)
        if (x[t] != prev[t]) ++rec.state_changes[t];
    rec.theta.push_back({theta.a, theta.q, theta.r});
    if (keep_trajectories) rec.trajectories.emplace_back(y.size(), 1, x);
    prev = x;
  }
  rec.last = Trajectory(y.size(), 1, prev);
  return rec;
}

}  // namespace pgas::oracles
