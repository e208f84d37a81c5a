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
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "pgas/backward.hpp"
#include "pgas/diagnostics.hpp"
#include "pgas/errors.hpp"
#include "pgas/kernel.hpp"
#include "pgas/log_weights.hpp"
#include "pgas/models/degenerate_lgss.hpp"
#include "pgas/models/lgss.hpp"
#include "pgas/models/stochastic_volatility.hpp"
#include "pgas/oracles/kalman.hpp"

using namespace pgas;

namespace {

KernelConfig config(std::size_t n, Flavor flavor) {
  KernelConfig c;
  c.num_particles = n;
  c.flavor = flavor;
  return c;
}

// Ancestor probabilities of attaching x'_t = 0.8 to particles at {0, 1} with equal weights
// under f = N(0.8 x, 1): exp(−0.32) : 1.
constexpr double kLowProbability = 0.42067;
constexpr double kHighProbability = 0.57933;

}  // namespace

TEST_CASE("ancestor weights for the two-particle Gaussian example") {
  const models::Lgss model({0.8, 1.0, 0.5}, {0.0, 0.0});
  const auto ps = testing::first_step_system(model, {0.0, 1.0}, {0.0, 0.0});
  const Trajectory ref = testing::scalar_path({0.0, 0.8});
  AncestorWeights weights(model, ps, 0, TailView(ref, 1));
  const auto lw = weights.log_weights(1);
  CHECK(lw[1] - lw[0] == doctest::Approx(0.32).epsilon(1e-12));
  const auto p = normalize_log_weights(lw);
  CHECK(p[0] == doctest::Approx(kLowProbability).epsilon(1e-4));
  CHECK(p[1] == doctest::Approx(kHighProbability).epsilon(1e-4));
  CHECK(weights.factor_evaluations() == 2);

  // Identical states and weights give a uniform law.
  const auto same = testing::first_step_system(model, {0.4, 0.4, 0.4}, {-1.0, -1.0, -1.0});
  AncestorWeights uniform(model, same, 0, TailView(ref, 1));
  for (double v : normalize_log_weights(uniform.log_weights(1))) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("full-ratio ancestor weights equal the Markov shortcut on an SSM") {
  Rng rng(4);
  const auto data = models::simulate_lgss({}, 12, rng);
  const models::Lgss markov({}, data.y);
  const testing::AsNonMarkov general(markov);
  const auto ps = smc_sweep(markov, 6, rng);
  const Trajectory ref = testing::scalar_path(data.x);
  for (std::size_t t = 1; t < 12; ++t) {
    AncestorWeights a(markov, ps, t - 1, TailView(ref, t));
    AncestorWeights b(general, ps, t - 1, TailView(ref, t));
    const auto pa = normalize_log_weights(a.log_weights(1));
    const auto pb = normalize_log_weights(b.log_weights(b.max_level()));
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(pa[i] - pb[i]) <= 1e-12);
  }
}

TEST_CASE("a single particle returns the reference for every flavor") {
  Rng rng(10);
  const auto data = models::simulate_lgss({}, 30, rng);
  const models::Lgss model({}, data.y);
  const Trajectory ref = testing::scalar_path(data.x);
  for (Flavor f : {Flavor::kPG, Flavor::kPGAS, Flavor::kPGBS}) {
    for (int rep = 0; rep < 5; ++rep) CHECK(kernel_sweep(model, ref, config(1, f), rng).trajectory == ref);
  }
  const auto sys = models::fourth_order_example();
  const auto ddata = models::simulate_degenerate(sys, 20, rng);
  const models::CollapsedDegenerateModel dmodel(sys, ddata.y);
  Trajectory dref(20, 1);
  for (std::size_t t = 0; t < 20; ++t) dref.state(t)[0] = ddata.state(static_cast<Eigen::Index>(t), 0);
  CHECK(kernel_sweep(dmodel, dref, config(1, Flavor::kPGAS), rng).trajectory == dref);
  CHECK(kernel_sweep(dmodel, dref, config(1, Flavor::kPGBS), rng).trajectory == dref);
}

TEST_CASE("the reference occupies the last slot at every time") {
  Rng rng(12);
  const auto data = models::simulate_lgss({}, 40, rng);
  const models::Lgss model({}, data.y);
  const Trajectory ref = testing::scalar_path(data.x);
  for (bool as : {false, true}) {
    const auto sweep = conditional_smc(model, ref, config(7, Flavor::kPGAS), as, rng);
    for (std::size_t t = 0; t < 40; ++t) CHECK(sweep.particles.state(t, 6)[0] == ref[t]);
    for (std::size_t t = 1; t < 40; ++t) {
      CHECK(sweep.diagnostics.reference_ancestors[t] < 7);
      CHECK(sweep.diagnostics.ancestor_switched[t] == (sweep.diagnostics.reference_ancestors[t] != 6));
      if (!as) CHECK(sweep.particles.ancestor(t, 6) == 6);
    }
  }
}

TEST_CASE("PGAS moves away from the reference") {
  Rng rng(13);
  const auto data = models::simulate_lgss({}, 20, rng);
  const models::Lgss model({}, data.y);
  const Trajectory ref = testing::scalar_path(data.x);
  int moved = 0;
  for (int rep = 0; rep < 200; ++rep)
    if (!(pgas_sweep(model, ref, config(2, Flavor::kPGAS), rng).trajectory == ref)) ++moved;
  CHECK(moved > 0);
}

TEST_CASE("kernel configuration errors name the field") {
  try {
    parse_flavor("pgx");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("kernel.flavor") != std::string::npos);
  }
  CHECK(parse_flavor("PGAS") == Flavor::kPGAS);
  KernelConfig c;
  c.num_particles = 0;
  try {
    c.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("kernel.N") != std::string::npos);
  }
  c.num_particles = 1;
  c.mh.kind = MhPolicy::Kind::kForcedMove;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.num_particles = 3;
  c.truncation = TruncationPolicy::adaptive(1.5, 0.1);
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("update rates on the stochastic volatility model") {
  Rng rng(2013);
  const models::SvParams theta{0.9, 0.5};
  const auto data = models::simulate_sv(theta, 400, rng);
  const models::StochasticVolatility model(theta, data.y);
  for (Flavor f : {Flavor::kPGAS, Flavor::kPG}) {
    Trajectory x = initial_trajectory(model, 20, rng);
    std::vector<double> x1;
    for (int n = 0; n < 1000; ++n) {
      x = kernel_sweep(model, x, config(20, f), rng).trajectory;
      x1.push_back(x[0]);
    }
    const double rate = update_rate(x1);
    if (f == Flavor::kPGAS) {
      CHECK(std::abs(rate - 0.95) <= 0.05);
    } else {
      CHECK(rate < 0.5);
    }
  }
}

TEST_CASE("backward simulation probabilities for the two-particle Gaussian example") {
  const models::Lgss model({0.8, 1.0, 0.5}, {0.0, 0.0});
  ParticleSystem ps = testing::first_step_system(model, {0.0, 1.0}, {0.0, 0.0});
  // Both particles at the final time sit at 0.8 with equal weight.
  for (std::size_t i = 0; i < 2; ++i) {
    const double x = 0.8;
    detail::place(model, ps, 1, i, i, State(&x, 1));
    ps.log_weights(1)[i] = 0.0;
  }
  Rng rng(21);
  int high = 0;
  const int draws = 100000;
  for (int n = 0; n < draws; ++n) {
    const auto path = backward_simulate(model, ps, TruncationPolicy::full(), rng);
    if (path.indices[0] == 1) ++high;
  }
  const double freq = static_cast<double>(high) / draws;
  const double se = std::sqrt(kHighProbability * (1.0 - kHighProbability) / draws);
  CHECK(std::abs(freq - kHighProbability) < 4.0 * se);

  ParticleSystem single = testing::first_step_system(model, {0.3}, {0.0});
  const double x = 0.1;
  detail::place(model, single, 1, 0, 0, State(&x, 1));
  const auto path = backward_simulate(model, single, TruncationPolicy::full(), rng);
  CHECK(path.indices == std::vector<std::size_t>{0, 0});
}

TEST_CASE("FFBSi smoothing means agree with the Kalman smoother") {
  Rng rng(31);
  const models::LgssParams theta{0.8, 1.0, 0.5};
  const auto data = models::simulate_lgss(theta, 15, rng);
  const models::Lgss model(theta, data.y);
  const auto exact = oracles::lgss_smoother(theta, data.y).mean;
  // Independent FFBSi runs make the per-run estimates i.i.d.
  std::vector<std::vector<double>> estimates(15);
  for (int rep = 0; rep < 200; ++rep) {
    const auto paths = ffbsi_smooth(model, 200, 20, TruncationPolicy::full(), rng);
    for (std::size_t t = 0; t < 15; ++t) {
      double m = 0.0;
      for (const auto& p : paths) m += p[t];
      estimates[t].push_back(m / static_cast<double>(paths.size()));
    }
  }
  int within = 0;
  for (std::size_t t = 0; t < 15; ++t) {
    const auto ms = testing::mean_se(estimates[t]);
    if (std::abs(ms.mean - exact[t]) < 3.0 * ms.se) ++within;
  }
  CHECK(within >= 14);

  const auto one = ffbsi_smooth(model, 1, 1, TruncationPolicy::full(), rng);
  CHECK(one.size() == 1);
  CHECK(one[0].length() == 15);
}

TEST_CASE("kernel sweeps are deterministic given the seed") {
  Rng data_rng(3);
  const auto data = models::simulate_lgss({}, 25, data_rng);
  const models::Lgss model({}, data.y);
  const Trajectory ref = testing::scalar_path(data.x);
  for (Flavor f : {Flavor::kPG, Flavor::kPGAS, Flavor::kPGBS}) {
    Rng a(5);
    Rng b(5);
    CHECK(kernel_sweep(model, ref, config(5, f), a).trajectory == kernel_sweep(model, ref, config(5, f), b).trajectory);
  }
}
