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

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pgas/model.hpp"
#include "pgas/rng.hpp"

namespace pgas::learning {

// The θ-side of a learning problem: builds the latent-variable Model for a parameter value and
// provides the conditional sampler (Gibbs) or the statistics/maximizer pair (SAEM).
class ParameterModel {
 public:
  virtual ~ParameterModel() = default;

  virtual std::vector<std::string> names() const = 0;
  virtual std::shared_ptr<const Model> build(std::span<const double> theta) const = 0;

  // θ' ~ p(θ | x, y), or an MH step leaving it invariant. May adapt internal proposal scales
  // while adapting() is on.
  virtual std::vector<double> sample_posterior(std::span<const double> theta, const Trajectory& x, Rng& rng) = 0;

  virtual std::vector<double> sufficient_statistics(const Trajectory& x) const;
  virtual std::vector<double> maximize(std::span<const double> statistics) const;

  void set_adapting(bool on) { adapting_ = on; }
  bool adapting() const { return adapting_; }

  // Named scalars for the diagnostics output (acceptance rates, proposal scales, ...).
  virtual std::vector<std::pair<std::string, double>> statistics() const { return {}; }

  // Description of the prior recorded in output metadata.
  virtual std::string prior_description() const { return ""; }

 private:
  bool adapting_ = false;
};

// Point-mass prior: θ never moves, so a Gibbs run is repeated kernel sweeps on one Model.
class FixedParameters final : public ParameterModel {
 public:
  FixedParameters(std::shared_ptr<const Model> model, std::vector<double> theta, std::vector<std::string> names)
      : model_(std::move(model)), theta_(std::move(theta)), names_(std::move(names)) {}

  std::vector<std::string> names() const override { return names_; }
  std::shared_ptr<const Model> build(std::span<const double>) const override { return model_; }
  std::vector<double> sample_posterior(std::span<const double>, const Trajectory&, Rng&) override { return theta_; }
  std::string prior_description() const override { return "point mass"; }

 private:
  std::shared_ptr<const Model> model_;
  std::vector<double> theta_;
  std::vector<std::string> names_;
};

}  // namespace pgas::learning
