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
#include <vector>

#include "pgas/learning/parameter_model.hpp"
#include "pgas/models/sir.hpp"

namespace pgas::learning {

// ρ | σ² ~ N(rho_mean, rho_scale · σ²),  σ² ~ IG(sigma_shape, sigma_scale). Flat priors on
// R+ for (γ, R0, α, F).
struct SirPrior {
  double rho_mean = 1.0;
  double rho_scale = 0.5;
  double sigma_shape = 0.01;
  double sigma_scale = 0.01;
};

// θ = (γ, R0, α, F, ρ, σ). The remaining SirParams fields are fixed by `base`.
class SirParameterModel final : public ParameterModel {
 public:
  SirParameterModel(models::SirParams base, std::vector<double> y, SirPrior prior = {}, std::size_t mh_steps = 10);

  std::vector<std::string> names() const override { return {"gamma", "r0", "alpha", "noise", "rho", "sigma"}; }
  std::shared_ptr<const Model> build(std::span<const double> theta) const override;
  // mh_steps random-walk MH steps on log(γ, R0, α, F), then (ρ, σ²) from the conjugate posterior.
  std::vector<double> sample_posterior(std::span<const double> theta, const Trajectory& v, Rng& rng) override;
  std::vector<std::pair<std::string, double>> statistics() const override;
  std::string prior_description() const override;

  models::SirParams params_for(std::span<const double> theta) const;
  // Ī_k for every week, or an empty vector if the path leaves (0, N).
  std::vector<double> mean_infected(const models::SirParams& params, const Trajectory& v) const;
  // log p(y | θ, V) as a function of (γ, R0, α, F) in log scale, plus the log Jacobian.
  double log_target(std::span<const double> log_block, std::span<const double> theta, const Trajectory& v) const;

  const std::array<double, 4>& proposal_scales() const { return scales_; }
  void set_proposal_scales(const std::array<double, 4>& s) { scales_ = s; }
  double acceptance_rate() const;
  std::size_t invalid_evaluations() const { return invalid_; }
  std::size_t max_clipped_steps() const { return clipped_; }

 private:
  models::SirParams base_;
  std::vector<double> y_;
  SirPrior prior_;
  std::size_t mh_steps_;
  std::array<double, 4> scales_{0.01, 0.01, 0.05, 0.2};
  std::size_t proposed_ = 0;
  std::size_t accepted_ = 0;
  std::size_t window_proposed_ = 0;
  std::size_t window_accepted_ = 0;
  std::size_t invalid_ = 0;
  mutable std::size_t clipped_ = 0;
};

}  // namespace pgas::learning
