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

#include <Eigen/Dense>

#include "pgas/models/degenerate_lgss.hpp"
#include "pgas/models/lgss.hpp"
#include "pgas/rng.hpp"

namespace pgas::oracles {

// x_{t+1} = A x_t + w_t, w_t ~ N(0, Q);  y_t = C x_t + e_t, e_t ~ N(0, R);  x_1 ~ N(m0, P0).
// Q and P0 may be singular.
struct LinearGaussianSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd C;
  Eigen::MatrixXd Q;
  Eigen::MatrixXd R;
  Eigen::VectorXd m0;
  Eigen::MatrixXd P0;
};

LinearGaussianSystem as_linear_system(const models::LgssParams& params);
// Full-state form of a degenerate system: Q padded with zeros, x_1 ~ N(0, Q), z_1 fixed.
LinearGaussianSystem as_linear_system(const models::DegenerateSystem& system);

struct KalmanResult {
  std::vector<Eigen::VectorXd> predicted_mean;  // x_{t|t-1}
  std::vector<Eigen::MatrixXd> predicted_cov;
  std::vector<Eigen::VectorXd> filtered_mean;   // x_{t|t}
  std::vector<Eigen::MatrixXd> filtered_cov;
  double log_likelihood = 0.0;
};

// Observations are rows of y. Throws NumericalError (with the time index) when an innovation
// covariance is not positive definite.
KalmanResult kalman_filter(const LinearGaussianSystem& system, const Eigen::MatrixXd& y);

struct SmootherResult {
  std::vector<Eigen::VectorXd> mean;  // x_{t|T}
  std::vector<Eigen::MatrixXd> cov;
  double log_likelihood = 0.0;
};

// Modified Bryson–Frazier smoother: adjoint recursion on λ̃, Λ̃ over the filter's innovations.
SmootherResult mbf_smoother(const LinearGaussianSystem& system, const Eigen::MatrixXd& y);

Eigen::MatrixXd column(const std::vector<double>& values);

// Scalar LGSS smoothing quantities via the Rauch–Tung–Striebel recursion.
struct ScalarSmoother {
  std::vector<double> mean;
  std::vector<double> var;
  std::vector<double> lag_one_cov;  // Cov(x_t, x_{t+1} | y), size T-1
  double log_likelihood = 0.0;
};

ScalarSmoother lgss_smoother(const models::LgssParams& params, const std::vector<double>& y);

double lgss_log_likelihood(const models::LgssParams& params, const std::vector<double>& y);

// Exact draw from p(x_{1:T} | y_{1:T}) by forward filtering, backward sampling.
std::vector<double> lgss_ffbs(const models::LgssParams& params, const std::vector<double>& y, Rng& rng);

}  // namespace pgas::oracles
