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
#include <span>
#include <vector>

#include "pgas/kernel.hpp"
#include "pgas/learning/gibbs.hpp"
#include "pgas/learning/parameter_model.hpp"

namespace pgas::learning {

struct SaemState {
  std::vector<double> statistics;  // Ŝ_n
  std::size_t iteration = 0;
};

// Ŝ_n = (1 − γ) Ŝ_{n−1} + γ s_n. Requires γ ∈ (0, 1]; the first update must use γ = 1 unless
// the state already holds statistics of matching size.
void saem_update(SaemState& state, std::span<const double> s, double gamma);

// γ_n = n^{−exponent}, so γ_1 = 1.
double saem_step_size(std::size_t n, double exponent = 0.7);

struct SaemConfig {
  std::size_t iterations = 1000;
  double exponent = 0.7;
  KernelConfig kernel;

  void validate() const;
};

struct SaemTrace {
  std::vector<std::string> names;
  std::vector<std::vector<double>> theta;  // θ[n], n = 1..iterations
  SaemState state;
};

// Alg. 4: x[n] ~ kernel(x[n−1] | θ[n−1]); Ŝ_n updated with the statistics of x[n];
// θ[n] = maximize(Ŝ_n). Failures are rethrown as IterationError.
SaemTrace psaem_run(const ParameterModel& params, const SaemConfig& config, std::vector<double> theta0, Rng& rng,
                    const IterationSink& sink = {});

}  // namespace pgas::learning
