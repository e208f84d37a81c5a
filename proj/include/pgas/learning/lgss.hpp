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
#include "pgas/models/lgss.hpp"

namespace pgas::learning {

// a | q ~ N(a_mean, q · a_scale),  q ~ IG(q_shape, q_scale),  r ~ IG(r_shape, r_scale).
struct LgssPrior {
  double a_mean = 0.0;
  double a_scale = 1.0;
  double q_shape = 0.01;
  double q_scale = 0.01;
  double r_shape = 0.01;
  double r_scale = 0.01;

  void validate() const;
};

// Normal–inverse-gamma posterior of (a, q) for the regression of x_{t+1} on x_t, and the
// inverse-gamma posterior of r given y_t − x_t. With fewer than two states (or no
// observations) the corresponding prior is drawn. Throws NumericalError on non-finite
// sufficient statistics.
models::LgssParams lgss_conjugate_posterior(const std::vector<double>& x, const std::vector<double>& y,
                                            const LgssPrior& prior, Rng& rng);

// Σ x_t² (t < T−1), Σ x_t x_{t+1}, Σ x_{t+1}², Σ (y_t − x_t)².
std::array<double, 4> lgss_statistics(const std::vector<double>& x, const std::vector<double>& y);
// M-step: a = S_xy/S_xx, q = (S_yy − a S_xy)/(T−1), r = S_r/T.
models::LgssParams lgss_maximize(std::span<const double> statistics, std::size_t horizon);
// The same statistics in expectation under the exact smoothing distribution at θ.
std::array<double, 4> lgss_expected_statistics(const models::LgssParams& params, const std::vector<double>& y);

struct EmResult {
  models::LgssParams params;
  std::size_t iterations = 0;
  bool converged = false;
};

// Fixed point of θ ← maximize(E_θ[statistics]).
EmResult lgss_em(const std::vector<double>& y, models::LgssParams start, std::size_t max_iterations = 10000,
                 double tolerance = 1e-10);

// sqrt(diag(I⁻¹)) with I the observed information of the exact log-likelihood at θ, from a
// central finite-difference Hessian in (a, q, r).
std::array<double, 3> lgss_standard_errors(const models::LgssParams& params, const std::vector<double>& y);

// θ = (a, q, r). The Gibbs step proposes from the conjugate posterior, which ignores the
// stationary law of x_1, and corrects for it (and for |a| < 1) with an independence MH
// accept/reject; r is drawn exactly.
class LgssParameterModel final : public ParameterModel {
 public:
  LgssParameterModel(std::vector<double> y, LgssPrior prior = {});

  std::vector<std::string> names() const override { return {"a", "q", "r"}; }
  std::shared_ptr<const Model> build(std::span<const double> theta) const override;
  std::vector<double> sample_posterior(std::span<const double> theta, const Trajectory& x, Rng& rng) override;
  std::vector<double> sufficient_statistics(const Trajectory& x) const override;
  std::vector<double> maximize(std::span<const double> statistics) const override;
  std::vector<std::pair<std::string, double>> statistics() const override;
  std::string prior_description() const override;

  // The (a, q, r) step for an explicit state path.
  models::LgssParams sample(const models::LgssParams& current, const std::vector<double>& x, Rng& rng);

  const std::vector<double>& observations() const { return y_; }

 private:
  std::vector<double> y_;
  LgssPrior prior_;
  std::size_t proposed_ = 0;
  std::size_t accepted_ = 0;
};

std::vector<double> first_component(const Trajectory& x);

}  // namespace pgas::learning
