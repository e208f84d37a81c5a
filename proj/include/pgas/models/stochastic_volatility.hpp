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
#include <vector>

#include "pgas/model.hpp"
#include "pgas/rng.hpp"

namespace pgas::models {

struct SvParams {
  double a = 0.9;
  double sigma = 0.5;
};

// x_{t+1} = a x_t + v_t, v_t ~ N(0, σ²);  y_t = e_t exp(x_t / 2), e_t ~ N(0, 1).
// x_1 is drawn from the stationary law N(0, σ²/(1−a²)).
class StochasticVolatility final : public Model {
 public:
  StochasticVolatility(SvParams params, std::vector<double> observations);

  const SvParams& params() const { return params_; }
  const std::vector<double>& observations() const { return y_; }

  std::size_t horizon() const override { return y_.size(); }
  std::size_t state_dim() const override { return 1; }
  std::size_t summary_dim() const override { return 1; }
  bool is_markov() const override { return true; }

  void initial_summary(std::span<double> out) const override { out[0] = 0.0; }
  void advance_summary(std::size_t, Summary, State x, std::span<double> out) const override { out[0] = x[0]; }
  double log_transition(std::size_t t, Summary prev, State x) const override;
  double log_observation(std::size_t t, Summary prev, State x) const override;
  void sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const override;

 private:
  SvParams params_;
  std::vector<double> y_;
  double stationary_variance_;
};

struct SvData {
  std::vector<double> x;
  std::vector<double> y;
};

SvData simulate_sv(const SvParams& params, std::size_t horizon, Rng& rng);

}  // namespace pgas::models
