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

#include "pgas/model.hpp"
#include "pgas/rng.hpp"

namespace pgas::models {

// Linear Gaussian system whose process noise enters only the leading x-block:
//
//   [x_{t+1}; z_{t+1}] = A [x_t; z_t] + [v_t; 0],  v_t ~ N(0, Q)
//   y_t = C [x_t; z_t] + e_t,                      e_t ~ N(0, R)
//
// with x_1 ~ N(0, Q) and z_1 fixed.
struct DegenerateSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd C;
  Eigen::MatrixXd Q;  // x_dim × x_dim
  Eigen::MatrixXd R;  // outputs × outputs
  std::size_t x_dim = 1;
  Eigen::VectorXd z1;

  std::size_t order() const { return static_cast<std::size_t>(A.rows()); }
  std::size_t z_dim() const { return order() - x_dim; }
  std::size_t outputs() const { return static_cast<std::size_t>(C.rows()); }

  auto A11() const { return A.topLeftCorner(x_dim, x_dim); }
  auto A12() const { return A.topRightCorner(x_dim, z_dim()); }
  auto A21() const { return A.bottomLeftCorner(z_dim(), x_dim); }
  auto A22() const { return A.bottomRightCorner(z_dim(), z_dim()); }

  double spectral_radius() const;
  // Throws std::invalid_argument on inconsistent shapes, ρ(A) ≥ 1, or non-PD Q / R.
  void validate() const;
};

// Observations y_t (row t) and the full simulated state [x_t; z_t] (row t).
struct DegenerateData {
  Eigen::MatrixXd y;
  Eigen::MatrixXd state;
};

DegenerateData simulate_degenerate(const DegenerateSystem& system, std::size_t horizon, Rng& rng);

// Single-output 4th-order system in companion form with the given (real) characteristic
// polynomial roots; x is the first state component and z holds its three previous values.
DegenerateSystem companion_system(const std::vector<double>& poly_coefficients, const Eigen::RowVectorXd& c,
                                  double q, double r);

// The 4th-order example: poles −0.65, −0.12, 0.22 ± 0.10i, Q = R = 0.1.
DegenerateSystem fourth_order_example();

// Random stable system of the given order and number of outputs, x_dim = 1, Q = R = 0.1 I.
// A has i.i.d. Gaussian entries rescaled to a spectral radius drawn from U[0.5, 0.95].
DegenerateSystem random_stable_system(std::size_t order, std::size_t outputs, Rng& rng);

// The system rephrased as a non-Markovian model in x alone: z_t = z_t(x_{1:t-1}) is carried
// in the summary (x_t, z_t). Bootstrap proposal x_{t+1} ~ N(A11 x_t + A12 z_t, Q).
class CollapsedDegenerateModel final : public Model {
 public:
  CollapsedDegenerateModel(DegenerateSystem system, Eigen::MatrixXd observations);

  const DegenerateSystem& system() const { return sys_; }
  const Eigen::MatrixXd& observations() const { return y_; }

  std::size_t horizon() const override { return static_cast<std::size_t>(y_.rows()); }
  std::size_t state_dim() const override { return sys_.x_dim; }
  std::size_t summary_dim() const override { return sys_.order(); }
  bool is_markov() const override { return false; }

  void initial_summary(std::span<double> out) const override;
  void advance_summary(std::size_t t, Summary prev, State x, std::span<double> out) const override;
  double log_transition(std::size_t t, Summary prev, State x) const override;
  double log_observation(std::size_t t, Summary prev, State x) const override;
  void sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const override;
  double log_factor_and_advance(std::size_t t, Summary prev, State x, std::span<double> out) const override;

 private:
  // Mean of x_t and the value of z_t given the summary (x_{t-1}, z_{t-1}).
  void predict(std::size_t t, Summary prev, Eigen::Ref<Eigen::VectorXd> x_mean, Eigen::Ref<Eigen::VectorXd> z) const;
  double log_obs(std::size_t t, State x, const Eigen::VectorXd& z) const;

  DegenerateSystem sys_;
  Eigen::MatrixXd y_;
  Eigen::MatrixXd q_chol_;
  Eigen::MatrixXd q_inv_;
  Eigen::MatrixXd r_inv_;
  double q_log_norm_;
  double r_log_norm_;
};

}  // namespace pgas::models
