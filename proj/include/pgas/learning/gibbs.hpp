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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pgas/kernel.hpp"
#include "pgas/learning/parameter_model.hpp"

namespace pgas::learning {

struct GibbsConfig {
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  KernelConfig kernel;
  bool keep_trajectories = false;  // store x[n] in the record (memory T per iteration)

  void validate() const;
};

// What a driver reports after each iteration n = 1, 2, ...
struct IterationRecord {
  std::size_t iteration = 0;
  const std::vector<double>* theta = nullptr;
  const Trajectory* trajectory = nullptr;
  const SweepDiagnostics* sweep = nullptr;
};

using IterationSink = std::function<void(const IterationRecord&)>;

struct ChainRecord {
  std::vector<std::string> names;
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;
  std::vector<std::vector<double>> theta;  // θ[n], n = 1..iterations
  std::vector<Trajectory> trajectories;    // x[n] when kept
  Trajectory last;                         // x at the final iteration
  std::vector<std::size_t> state_changes;  // per t: #n ≥ 2 with x_t[n] ≠ x_t[n−1]
  std::vector<std::size_t> ancestor_switches;
  std::vector<std::size_t> truncation_level_sum;
  std::size_t factor_evaluations = 0;
  std::size_t mh_accepted = 0;
  std::size_t mh_proposed = 0;

  std::size_t iterations() const { return theta.size(); }
  // θ_j[n] for n after burn-in.
  std::vector<double> parameter(std::size_t j, bool after_burn_in = true) const;
  double update_rate(std::size_t t) const;
};

// Alg. 3: alternate x[n] ~ kernel(x[n−1] | θ[n−1]) and θ[n] ~ p(θ | x[n], y). An empty x0
// starts from an unconditional particle filter draw. Failures are rethrown as
// IterationError. The parameter model adapts during burn-in only.
ChainRecord gibbs_run(ParameterModel& params, const GibbsConfig& config, std::vector<double> theta0,
                      Trajectory x0, Rng& rng, const IterationSink& sink = {});

}  // namespace pgas::learning
