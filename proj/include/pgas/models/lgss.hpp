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

// θ = (a, q, r) of the scalar linear Gaussian state-space model.
struct LgssParams {
  double a = 0.8;
  double q = 1.0;
  double r = 0.5;

  double stationary_variance() const { return q / (1.0 - a * a); }
  // Throws std::invalid_argument unless |a| < 1 and q, r > 0.
  void validate() const;
};

// x_{t+1} = a x_t + v_t, v_t ~ N(0, q);  y_t = x_t + e_t, e_t ~ N(0, r);  x_1 ~ N(0, q/(1−a²)).
class Lgss final : public Model {
 public:
  Lgss(LgssParams params, std::vector<double> observations);

  const LgssParams& params() const { return params_; }
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
  LgssParams params_;
  std::vector<double> y_;
};

struct LgssData {
  std::vector<double> x;
  std::vector<double> y;
};

LgssData simulate_lgss(const LgssParams& params, std::size_t horizon, Rng& rng);

}  // namespace pgas::models
