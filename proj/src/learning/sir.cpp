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
#include "pgas/learning/sir.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pgas/learning/mh.hpp"
#include "pgas/math.hpp"

namespace pgas::learning {

namespace {
constexpr std::size_t kTuningWindow = 100;
}

SirParameterModel::SirParameterModel(models::SirParams base, std::vector<double> y, SirPrior prior,
                                     std::size_t mh_steps)
    : base_(base), y_(std::move(y)), prior_(prior), mh_steps_(mh_steps) {
  base_.validate();
}

models::SirParams SirParameterModel::params_for(std::span<const double> theta) const {
  models::SirParams p = base_;
  p.gamma = theta[0];
  p.r0 = theta[1];
  p.alpha = theta[2];
  p.noise = theta[3];
  p.rho = theta[4];
  p.sigma = theta[5];
  return p;
}

std::shared_ptr<const Model> SirParameterModel::build(std::span<const double> theta) const {
  return std::make_shared<models::SirCollapsedModel>(params_for(theta), y_);
}

std::vector<double> SirParameterModel::mean_infected(const models::SirParams& p, const Trajectory& v) const {
  const auto s0 = p.initial_state();
  models::SirState x{s0[0], s0[1], s0[2]};
  std::vector<double> out(v.length());
  std::size_t clipped = 0;
  for (std::size_t k = 0; k < v.length(); ++k) {
    x = models::sir_week(x, v.state(k), k, p, out[k], &clipped);
    if (!(out[k] > 0.0 && out[k] < p.population)) return {};
  }
  clipped_ = std::max(clipped_, clipped);
  return out;
}

double SirParameterModel::log_target(std::span<const double> log_block, std::span<const double> theta,
                                     const Trajectory& v) const {
  std::vector<double> t(theta.begin(), theta.end());
  double log_jacobian = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    t[j] = std::exp(log_block[j]);
    log_jacobian += log_block[j];
  }
  const auto p = params_for(t);
  const auto ibar = mean_infected(p, v);
  if (ibar.empty()) return -std::numeric_limits<double>::infinity();
  double ll = 0.0;
  const double var = p.sigma * p.sigma;
  for (std::size_t k = 0; k < ibar.size(); ++k) ll += log_normal_pdf(y_[k], p.rho * logit(ibar[k] / p.population), var);
  return ll + log_jacobian;
}

std::vector<double> SirParameterModel::sample_posterior(std::span<const double> theta, const Trajectory& v,
                                                        Rng& rng) {
  std::vector<double> next(theta.begin(), theta.end());
  std::vector<double> block(4);
  for (std::size_t j = 0; j < 4; ++j) block[j] = std::log(next[j]);
  auto target = [&](std::span<const double> u) { return log_target(u, next, v); };
  double current = target(block);
  for (std::size_t s = 0; s < mh_steps_; ++s) {
    const auto step = rw_mh_step(block, current, target, scales_, rng);
    if (step.invalid) ++invalid_;
    ++proposed_;
    ++window_proposed_;
    if (step.accepted) {
      ++accepted_;
      ++window_accepted_;
    }
    block = step.value;
    current = step.log_target;
    if (adapting() && window_proposed_ >= kTuningWindow) {
      const double rate = static_cast<double>(window_accepted_) / static_cast<double>(window_proposed_);
      const double factor = tune_scale(1.0, rate);
      for (double& sc : scales_) sc *= factor;
      window_proposed_ = 0;
      window_accepted_ = 0;
    }
  }
  for (std::size_t j = 0; j < 4; ++j) next[j] = std::exp(block[j]);

  // (ρ, σ²) | rest: Bayesian linear regression of y on logit(Ī/N) without intercept.
  const auto p = params_for(next);
  const auto ibar = mean_infected(p, v);
  if (ibar.empty()) return next;
  const double lambda0 = 1.0 / prior_.rho_scale;
  double szz = 0.0;
  double szy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < ibar.size(); ++k) {
    const double z = logit(ibar[k] / p.population);
    szz += z * z;
    szy += z * y_[k];
    syy += y_[k] * y_[k];
  }
  const double lambda = lambda0 + szz;
  const double mean = (lambda0 * prior_.rho_mean + szy) / lambda;
  const double shape = prior_.sigma_shape + 0.5 * static_cast<double>(ibar.size());
  const double scale =
      prior_.sigma_scale + 0.5 * (syy + lambda0 * prior_.rho_mean * prior_.rho_mean - lambda * mean * mean);
  const double var = rng.inverse_gamma(shape, scale);
  next[4] = rng.normal(mean, std::sqrt(var / lambda));
  next[5] = std::sqrt(var);
  return next;
}

double SirParameterModel::acceptance_rate() const {
  return proposed_ ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
}

std::vector<std::pair<std::string, double>> SirParameterModel::statistics() const {
  return {{"mh_acceptance", acceptance_rate()},
          {"scale_gamma", scales_[0]},
          {"scale_r0", scales_[1]},
          {"scale_alpha", scales_[2]},
          {"scale_noise", scales_[3]},
          {"mh_invalid", static_cast<double>(invalid_)}};
}

std::string SirParameterModel::prior_description() const {
  std::ostringstream os;
  os << "rho|sigma2 ~ N(" << prior_.rho_mean << ", " << prior_.rho_scale << "*sigma2), sigma2 ~ IG("
     << prior_.sigma_shape << ", " << prior_.sigma_scale << "), flat on R+ for gamma, r0, alpha, noise";
  return os.str();
}

}  // namespace pgas::learning
