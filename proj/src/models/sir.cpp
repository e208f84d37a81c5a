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
#include "pgas/models/sir.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pgas/math.hpp"

namespace pgas::models {

double SirParams::innovation_variance() const { return 1.0 / std::sqrt(dt()); }

double SirParams::transmission_rate(double t) const {
  return r0 * (gamma + mu) * (1.0 + alpha * std::sin(2.0 * std::numbers::pi * t / 12.0));
}

std::array<double, 3> SirParams::initial_state() const {
  return {initial_fraction[0] * population, initial_fraction[1] * population, initial_fraction[2] * population};
}

void SirParams::validate() const {
  if (!(population > 0.0)) throw std::invalid_argument("sir: population must be positive");
  if (substeps < 1) throw std::invalid_argument("sir: substeps must be >= 1");
  if (!(interval > 0.0)) throw std::invalid_argument("sir: interval must be positive");
  if (!(gamma > 0.0 && r0 > 0.0 && alpha >= 0.0 && noise >= 0.0)) {
    throw std::invalid_argument("sir: gamma, R0 must be positive and alpha, F non-negative");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sir: sigma must be positive");
}

SirStepResult sir_step(const SirState& x, double v, double t, const SirParams& p) {
  const double dt = p.dt();
  const double infection = (1.0 + p.noise * v) * p.transmission_rate(t) * x.s / p.population * x.i * dt;
  SirStepResult out;
  out.state.s = x.s + p.mu * p.population * dt - p.mu * x.s * dt - infection;
  out.state.i = x.i - (p.gamma + p.mu) * x.i * dt + infection;
  out.state.r = x.r + p.gamma * x.i * dt - p.mu * x.r * dt;
  if (out.state.s < 0.0 || out.state.i < 0.0 || out.state.r < 0.0) {
    const double total = out.state.total();
    out.state.s = std::max(out.state.s, 0.0);
    out.state.i = std::max(out.state.i, 0.0);
    out.state.r = std::max(total - out.state.s - out.state.i, 0.0);
    out.clipped = true;
  }
  return out;
}

SirState sir_week(const SirState& start, std::span<const double> v, std::size_t week, const SirParams& p,
                  double& mean_infected, std::size_t* clipped) {
  SirState x = start;
  const double t0 = static_cast<double>(week) * p.interval;
  const double dt = p.dt();
  double sum_i = 0.0;
  for (std::size_t j = 0; j < p.substeps; ++j) {
    const auto step = sir_step(x, v[j], t0 + static_cast<double>(j) * dt, p);
    x = step.state;
    if (step.clipped && clipped != nullptr) ++*clipped;
    sum_i += x.i;
  }
  mean_infected = sum_i / static_cast<double>(p.substeps);
  return x;
}

SirCollapsedModel::SirCollapsedModel(SirParams params, std::vector<double> observations)
    : params_(params), y_(std::move(observations)) {
  params_.validate();
  log_norm_v_ = -0.5 * static_cast<double>(params_.substeps) *
                std::log(2.0 * std::numbers::pi * params_.innovation_variance());
}

void SirCollapsedModel::initial_summary(std::span<double> out) const {
  const auto s0 = params_.initial_state();
  out[0] = s0[0];
  out[1] = s0[1];
  out[2] = s0[2];
}

double SirCollapsedModel::observation_log_density(std::size_t week, double mean_infected) const {
  if (!(mean_infected > 0.0 && mean_infected < params_.population)) return -std::numeric_limits<double>::infinity();
  return log_normal_pdf(y_[week], params_.rho * logit(mean_infected / params_.population),
                        params_.sigma * params_.sigma);
}

void SirCollapsedModel::advance_summary(std::size_t t, Summary prev, State x, std::span<double> out) const {
  double mean_infected = 0.0;
  const SirState end = sir_week({prev[0], prev[1], prev[2]}, x, t, params_, mean_infected);
  out[0] = end.s;
  out[1] = end.i;
  out[2] = end.r;
}

double SirCollapsedModel::log_transition(std::size_t, Summary, State x) const {
  double ss = 0.0;
  for (double v : x) ss += v * v;
  return log_norm_v_ - 0.5 * ss / params_.innovation_variance();
}

double SirCollapsedModel::log_observation(std::size_t t, Summary prev, State x) const {
  double mean_infected = 0.0;
  sir_week({prev[0], prev[1], prev[2]}, x, t, params_, mean_infected);
  return observation_log_density(t, mean_infected);
}

double SirCollapsedModel::log_factor_and_advance(std::size_t t, Summary prev, State x, std::span<double> out) const {
  double mean_infected = 0.0;
  const SirState end = sir_week({prev[0], prev[1], prev[2]}, x, t, params_, mean_infected);
  out[0] = end.s;
  out[1] = end.i;
  out[2] = end.r;
  return log_transition(t, prev, x) + observation_log_density(t, mean_infected);
}

void SirCollapsedModel::sample_transition(std::size_t, Summary, std::span<double> out, Rng& rng) const {
  const double sd = std::sqrt(params_.innovation_variance());
  for (double& v : out) v = rng.normal(0.0, sd);
}

SirData simulate_sir(const SirParams& params, std::size_t weeks, Rng& rng) {
  params.validate();
  SirData data;
  data.innovations = Trajectory(weeks, params.substeps);
  data.y.resize(weeks);
  data.mean_infected.resize(weeks);
  data.week_end.resize(weeks);
  const auto s0 = params.initial_state();
  SirState x{s0[0], s0[1], s0[2]};
  const double sd = std::sqrt(params.innovation_variance());
  for (std::size_t k = 0; k < weeks; ++k) {
    auto v = data.innovations.state(k);
    for (double& vj : v) vj = rng.normal(0.0, sd);
    double mean_infected = 0.0;
    x = sir_week(x, v, k, params, mean_infected, &data.clipped_steps);
    data.week_end[k] = x;
    data.mean_infected[k] = mean_infected;
    const double frac = std::clamp(mean_infected / params.population, 1e-300, 1.0 - 1e-16);
    data.y[k] = rng.normal(params.rho * logit(frac), params.sigma);
  }
  return data;
}

std::size_t weeks_in_years(double years, const SirParams& params) {
  return static_cast<std::size_t>(std::floor(12.0 * years / params.interval));
}

}  // namespace pgas::models
