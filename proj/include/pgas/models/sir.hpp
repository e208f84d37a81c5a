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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "pgas/model.hpp"
#include "pgas/rng.hpp"

namespace pgas::models {

// Seasonal SIR model with environmental noise, Euler–Maruyama discretized, observed weekly
// through the log-odds of the mean infected proportion. Time is measured in months.
struct SirParams {
  double population = 1e6;
  double mu = 0.0012;     // birth/death rate
  double gamma = 3.0;     // recovery rate
  double r0 = 10.0;       // basic reproductive ratio
  double alpha = 0.16;    // seasonality strength
  double noise = 0.03;    // F
  double rho = 1.1;
  double sigma = 0.224;
  double interval = 7.0 / 30.0;  // Δ, one week
  std::size_t substeps = 7;      // m
  std::array<double, 3> initial_fraction{0.9, 0.05, 0.05};

  double dt() const { return interval / static_cast<double>(substeps); }
  // Variance of each innovation v_t.
  double innovation_variance() const;
  // β_t = R0 (γ + μ)(1 + α sin(2π t / 12)).
  double transmission_rate(double t) const;
  std::array<double, 3> initial_state() const;
  void validate() const;
};

struct SirState {
  double s = 0.0;
  double i = 0.0;
  double r = 0.0;
  double total() const { return s + i + r; }
};

struct SirStepResult {
  SirState state;
  bool clipped = false;  // a compartment went negative and was clipped to zero
};

// One Euler–Maruyama step from time t with innovation v. Negative compartments are clipped to
// zero and R is set to N − S − I so the total is preserved.
SirStepResult sir_step(const SirState& state, double v, double t, const SirParams& params);

// Simulate week k (0-based) from its initial state with innovation block v (size m). Returns
// the week-end state and writes the mean of I over the m post-step values.
SirState sir_week(const SirState& start, std::span<const double> v, std::size_t week, const SirParams& params,
                  double& mean_infected, std::size_t* clipped = nullptr);

// The model collapsed to the innovation blocks V_k ~ N(0, I_m · var): non-Markovian in V, with
// the week-end (S, I, R) carried as the summary. Bootstrap proposal.
class SirCollapsedModel final : public Model {
 public:
  SirCollapsedModel(SirParams params, std::vector<double> observations);

  const SirParams& params() const { return params_; }
  const std::vector<double>& observations() const { return y_; }

  std::size_t horizon() const override { return y_.size(); }
  std::size_t state_dim() const override { return params_.substeps; }
  std::size_t summary_dim() const override { return 3; }
  bool is_markov() const override { return false; }

  void initial_summary(std::span<double> out) const override;
  void advance_summary(std::size_t t, Summary prev, State x, std::span<double> out) const override;
  double log_transition(std::size_t t, Summary prev, State x) const override;
  double log_observation(std::size_t t, Summary prev, State x) const override;
  void sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const override;
  double log_factor_and_advance(std::size_t t, Summary prev, State x, std::span<double> out) const override;

  // log N(y_k; ρ logit(Ī_k / N), σ²); −inf when Ī_k ∉ (0, N).
  double observation_log_density(std::size_t week, double mean_infected) const;

 private:
  SirParams params_;
  std::vector<double> y_;
  double log_norm_v_;
};

struct SirData {
  std::vector<double> y;                  // weekly observations
  std::vector<double> mean_infected;      // Ī_k
  std::vector<SirState> week_end;         // state at the end of each week
  Trajectory innovations;                 // V_{1:K}
  std::size_t clipped_steps = 0;
};

SirData simulate_sir(const SirParams& params, std::size_t weeks, Rng& rng);

// Number of weekly observations in the given number of 30-day-month years.
std::size_t weeks_in_years(double years, const SirParams& params);

}  // namespace pgas::models
