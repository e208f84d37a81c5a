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
#include "pgas/learning/lgss.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "pgas/errors.hpp"
#include "pgas/math.hpp"
#include "pgas/oracles/kalman.hpp"

namespace pgas::learning {

void LgssPrior::validate() const {
  if (!(a_scale > 0.0)) throw ConfigError("prior.a_scale must be positive");
  if (!(q_shape > 0.0 && q_scale > 0.0)) throw ConfigError("prior.q must have positive shape and scale");
  if (!(r_shape > 0.0 && r_scale > 0.0)) throw ConfigError("prior.r must have positive shape and scale");
}

std::array<double, 4> lgss_statistics(const std::vector<double>& x, const std::vector<double>& y) {
  std::array<double, 4> s{0.0, 0.0, 0.0, 0.0};
  for (std::size_t t = 0; t + 1 < x.size(); ++t) {
    s[0] += x[t] * x[t];
    s[1] += x[t] * x[t + 1];
    s[2] += x[t + 1] * x[t + 1];
  }
  for (std::size_t t = 0; t < y.size() && t < x.size(); ++t) s[3] += (y[t] - x[t]) * (y[t] - x[t]);
  return s;
}

models::LgssParams lgss_conjugate_posterior(const std::vector<double>& x, const std::vector<double>& y,
                                            const LgssPrior& prior, Rng& rng) {
  prior.validate();
  const auto s = lgss_statistics(x, y);
  for (std::size_t j = 0; j < s.size(); ++j)
    if (!std::isfinite(s[j])) throw NumericalError("lgss posterior: non-finite sufficient statistic", j);

  const double lambda0 = 1.0 / prior.a_scale;
  double shape = prior.q_shape;
  double scale = prior.q_scale;
  double lambda = lambda0;
  double mean = prior.a_mean;
  if (x.size() >= 2) {
    lambda = lambda0 + s[0];
    mean = (lambda0 * prior.a_mean + s[1]) / lambda;
    shape += 0.5 * static_cast<double>(x.size() - 1);
    scale += 0.5 * (s[2] + lambda0 * prior.a_mean * prior.a_mean - lambda * mean * mean);
  }
  models::LgssParams theta;
  theta.q = rng.inverse_gamma(shape, scale);
  theta.a = rng.normal(mean, std::sqrt(theta.q / lambda));
  const std::size_t n_obs = std::min(x.size(), y.size());
  theta.r = rng.inverse_gamma(prior.r_shape + 0.5 * static_cast<double>(n_obs), prior.r_scale + 0.5 * s[3]);
  return theta;
}

models::LgssParams lgss_maximize(std::span<const double> st, std::size_t horizon) {
  if (st.size() != 4 || horizon < 2) throw std::invalid_argument("lgss_maximize: bad statistics");
  models::LgssParams theta;
  theta.a = st[1] / st[0];
  theta.q = (st[2] - theta.a * st[1]) / static_cast<double>(horizon - 1);
  theta.r = st[3] / static_cast<double>(horizon);
  theta.validate();
  return theta;
}

std::array<double, 4> lgss_expected_statistics(const models::LgssParams& params, const std::vector<double>& y) {
  const auto sm = oracles::lgss_smoother(params, y);
  std::array<double, 4> s{0.0, 0.0, 0.0, 0.0};
  for (std::size_t t = 0; t + 1 < y.size(); ++t) {
    s[0] += sm.mean[t] * sm.mean[t] + sm.var[t];
    s[1] += sm.mean[t] * sm.mean[t + 1] + sm.lag_one_cov[t];
    s[2] += sm.mean[t + 1] * sm.mean[t + 1] + sm.var[t + 1];
  }
  for (std::size_t t = 0; t < y.size(); ++t) s[3] += (y[t] - sm.mean[t]) * (y[t] - sm.mean[t]) + sm.var[t];
  return s;
}

EmResult lgss_em(const std::vector<double>& y, models::LgssParams start, std::size_t max_iterations,
                 double tolerance) {
  EmResult out{start, 0, false};
  for (std::size_t i = 0; i < max_iterations; ++i) {
    const auto s = lgss_expected_statistics(out.params, y);
    const auto next = lgss_maximize(s, y.size());
    const double change = std::max({std::abs(next.a - out.params.a), std::abs(next.q - out.params.q),
                                    std::abs(next.r - out.params.r)});
    out.params = next;
    out.iterations = i + 1;
    if (change < tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::array<double, 3> lgss_standard_errors(const models::LgssParams& params, const std::vector<double>& y) {
  const std::array<double, 3> theta{params.a, params.q, params.r};
  auto loglik = [&](std::array<double, 3> v) {
    return oracles::lgss_log_likelihood({v[0], v[1], v[2]}, y);
  };
  std::array<double, 3> h{};
  for (int i = 0; i < 3; ++i) h[i] = 1e-4 * std::max(std::abs(theta[i]), 0.1);
  Eigen::Matrix3d hess;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      auto at = [&](double di, double dj) {
        auto v = theta;
        v[i] += di;
        v[j] += dj;
        return loglik(v);
      };
      const double value = (at(h[i], h[j]) - at(h[i], -h[j]) - at(-h[i], h[j]) + at(-h[i], -h[j])) / (4.0 * h[i] * h[j]);
      hess(i, j) = value;
      hess(j, i) = value;
    }
  }
  const Eigen::Matrix3d cov = (-hess).inverse();
  std::array<double, 3> se{};
  for (int i = 0; i < 3; ++i) se[i] = std::sqrt(cov(i, i));
  return se;
}

std::vector<double> first_component(const Trajectory& x) {
  std::vector<double> out(x.length());
  for (std::size_t t = 0; t < x.length(); ++t) out[t] = x[t];
  return out;
}

LgssParameterModel::LgssParameterModel(std::vector<double> y, LgssPrior prior) : y_(std::move(y)), prior_(prior) {
  prior_.validate();
}

std::shared_ptr<const Model> LgssParameterModel::build(std::span<const double> theta) const {
  return std::make_shared<models::Lgss>(models::LgssParams{theta[0], theta[1], theta[2]}, y_);
}

models::LgssParams LgssParameterModel::sample(const models::LgssParams& current, const std::vector<double>& x,
                                              Rng& rng) {
  const auto proposal = lgss_conjugate_posterior(x, y_, prior_, rng);
  models::LgssParams next = current;
  next.r = proposal.r;
  ++proposed_;
  if (std::abs(proposal.a) < 1.0 && !x.empty()) {
    const double log_ratio = log_normal_pdf(x[0], 0.0, proposal.stationary_variance()) -
                             log_normal_pdf(x[0], 0.0, current.stationary_variance());
    if (std::log(rng.uniform()) < log_ratio) {
      next.a = proposal.a;
      next.q = proposal.q;
      ++accepted_;
    }
  }
  return next;
}

std::vector<double> LgssParameterModel::sample_posterior(std::span<const double> theta, const Trajectory& x,
                                                         Rng& rng) {
  const auto next = sample({theta[0], theta[1], theta[2]}, first_component(x), rng);
  return {next.a, next.q, next.r};
}

std::vector<double> LgssParameterModel::sufficient_statistics(const Trajectory& x) const {
  const auto s = lgss_statistics(first_component(x), y_);
  return {s.begin(), s.end()};
}

std::vector<double> LgssParameterModel::maximize(std::span<const double> statistics) const {
  const auto theta = lgss_maximize(statistics, y_.size());
  return {theta.a, theta.q, theta.r};
}

std::vector<std::pair<std::string, double>> LgssParameterModel::statistics() const {
  const double rate = proposed_ ? static_cast<double>(accepted_) / static_cast<double>(proposed_) : 0.0;
  return {{"aq_acceptance", rate}};
}

std::string LgssParameterModel::prior_description() const {
  std::ostringstream os;
  os << "a|q ~ N(" << prior_.a_mean << ", q*" << prior_.a_scale << "), q ~ IG(" << prior_.q_shape << ", "
     << prior_.q_scale << "), r ~ IG(" << prior_.r_shape << ", " << prior_.r_scale << ")";
  return os.str();
}

}  // namespace pgas::learning
