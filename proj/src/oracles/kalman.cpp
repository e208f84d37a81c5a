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
#include "pgas/oracles/kalman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pgas/errors.hpp"

namespace pgas::oracles {

LinearGaussianSystem as_linear_system(const models::LgssParams& params) {
  params.validate();
  LinearGaussianSystem s;
  s.A = Eigen::MatrixXd::Constant(1, 1, params.a);
  s.C = Eigen::MatrixXd::Identity(1, 1);
  s.Q = Eigen::MatrixXd::Constant(1, 1, params.q);
  s.R = Eigen::MatrixXd::Constant(1, 1, params.r);
  s.m0 = Eigen::VectorXd::Zero(1);
  s.P0 = Eigen::MatrixXd::Constant(1, 1, params.stationary_variance());
  return s;
}

LinearGaussianSystem as_linear_system(const models::DegenerateSystem& system) {
  system.validate();
  const auto n = static_cast<Eigen::Index>(system.order());
  const auto nx = static_cast<Eigen::Index>(system.x_dim);
  LinearGaussianSystem s;
  s.A = system.A;
  s.C = system.C;
  s.Q = Eigen::MatrixXd::Zero(n, n);
  s.Q.topLeftCorner(nx, nx) = system.Q;
  s.R = system.R;
  s.m0 = Eigen::VectorXd::Zero(n);
  s.m0.tail(n - nx) = system.z1;
  s.P0 = s.Q;
  return s;
}

namespace {

struct Innovation {
  Eigen::VectorXd e;
  Eigen::LLT<Eigen::MatrixXd> s_chol;
  Eigen::MatrixXd gain;  // P C' S^{-1}
};

Innovation innovate(const LinearGaussianSystem& sys, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                    const Eigen::VectorXd& y, std::size_t t) {
  Innovation in;
  in.e = y - sys.C * mean;
  const Eigen::MatrixXd s = sys.C * cov * sys.C.transpose() + sys.R;
  in.s_chol.compute(s);
  if (in.s_chol.info() != Eigen::Success) throw NumericalError("kalman: innovation covariance not positive definite", t);
  in.gain = in.s_chol.solve(sys.C * cov).transpose();
  return in;
}

double innovation_log_density(const Innovation& in) {
  const Eigen::MatrixXd& l = in.s_chol.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double quad = in.e.dot(in.s_chol.solve(in.e));
  return -0.5 * (static_cast<double>(in.e.size()) * std::log(2.0 * std::numbers::pi) + log_det + quad);
}

}  // namespace

KalmanResult kalman_filter(const LinearGaussianSystem& sys, const Eigen::MatrixXd& y) {
  const auto horizon = static_cast<std::size_t>(y.rows());
  KalmanResult out;
  Eigen::VectorXd mean = sys.m0;
  Eigen::MatrixXd cov = sys.P0;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (t > 0) {
      mean = sys.A * out.filtered_mean.back();
      cov = sys.A * out.filtered_cov.back() * sys.A.transpose() + sys.Q;
    }
    out.predicted_mean.push_back(mean);
    out.predicted_cov.push_back(cov);
    const auto in = innovate(sys, mean, cov, y.row(static_cast<Eigen::Index>(t)).transpose(), t);
    out.log_likelihood += innovation_log_density(in);
    out.filtered_mean.push_back(mean + in.gain * in.e);
    Eigen::MatrixXd filtered = cov - in.gain * sys.C * cov;
    out.filtered_cov.push_back(0.5 * (filtered + filtered.transpose()));
  }
  return out;
}

SmootherResult mbf_smoother(const LinearGaussianSystem& sys, const Eigen::MatrixXd& y) {
  const auto horizon = static_cast<std::size_t>(y.rows());
  const auto n = sys.A.rows();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  std::vector<Innovation> innovations;
  std::vector<Eigen::VectorXd> pred_mean;
  std::vector<Eigen::MatrixXd> pred_cov;
  SmootherResult out;
  Eigen::VectorXd mean = sys.m0;
  Eigen::MatrixXd cov = sys.P0;
  for (std::size_t t = 0; t < horizon; ++t) {
    pred_mean.push_back(mean);
    pred_cov.push_back(cov);
    innovations.push_back(innovate(sys, mean, cov, y.row(static_cast<Eigen::Index>(t)).transpose(), t));
    const auto& in = innovations.back();
    out.log_likelihood += innovation_log_density(in);
    const Eigen::VectorXd fm = mean + in.gain * in.e;
    const Eigen::MatrixXd fc = cov - in.gain * sys.C * cov;
    mean = sys.A * fm;
    cov = sys.A * fc * sys.A.transpose() + sys.Q;
  }

  out.mean.resize(horizon);
  out.cov.resize(horizon);
  Eigen::VectorXd lambda_hat = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXd Lambda_hat = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = horizon; t-- > 0;) {
    const auto& in = innovations[t];
    const Eigen::MatrixXd ikc = identity - in.gain * sys.C;
    const Eigen::MatrixXd s_inv_c = in.s_chol.solve(sys.C);
    const Eigen::VectorXd lambda = -sys.C.transpose() * in.s_chol.solve(in.e) + ikc.transpose() * lambda_hat;
    const Eigen::MatrixXd Lambda = sys.C.transpose() * s_inv_c + ikc.transpose() * Lambda_hat * ikc;
    const Eigen::MatrixXd& p = pred_cov[t];
    out.mean[t] = pred_mean[t] - p * lambda;
    Eigen::MatrixXd c = p - p * Lambda * p;
    out.cov[t] = 0.5 * (c + c.transpose());
    if ((out.cov[t].diagonal().array() < -1e-9).any()) throw NumericalError("mbf: negative smoothed variance", t);
    lambda_hat = sys.A.transpose() * lambda;
    Lambda_hat = sys.A.transpose() * Lambda * sys.A;
  }
  return out;
}

Eigen::MatrixXd column(const std::vector<double>& values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

namespace {

struct ScalarFilter {
  std::vector<double> fm, fv, pm, pv;
  double log_likelihood = 0.0;
};

ScalarFilter scalar_filter(const models::LgssParams& p, const std::vector<double>& y) {
  p.validate();
  const std::size_t horizon = y.size();
  ScalarFilter f;
  f.fm.resize(horizon);
  f.fv.resize(horizon);
  f.pm.resize(horizon);
  f.pv.resize(horizon);
  double m = 0.0;
  double v = p.stationary_variance();
  for (std::size_t t = 0; t < horizon; ++t) {
    if (t > 0) {
      m = p.a * f.fm[t - 1];
      v = p.a * p.a * f.fv[t - 1] + p.q;
    }
    f.pm[t] = m;
    f.pv[t] = v;
    const double s = v + p.r;
    const double e = y[t] - m;
    f.log_likelihood += -0.5 * (std::log(2.0 * std::numbers::pi * s) + e * e / s);
    const double k = v / s;
    f.fm[t] = m + k * e;
    f.fv[t] = (1.0 - k) * v;
  }
  return f;
}

}  // namespace

ScalarSmoother lgss_smoother(const models::LgssParams& p, const std::vector<double>& y) {
  const auto f = scalar_filter(p, y);
  const std::size_t horizon = y.size();
  ScalarSmoother s;
  s.log_likelihood = f.log_likelihood;
  s.mean = f.fm;
  s.var = f.fv;
  if (horizon == 0) return s;
  s.lag_one_cov.assign(horizon - 1, 0.0);
  for (std::size_t t = horizon - 1; t-- > 0;) {
    const double j = f.fv[t] * p.a / f.pv[t + 1];
    s.mean[t] = f.fm[t] + j * (s.mean[t + 1] - f.pm[t + 1]);
    s.var[t] = f.fv[t] + j * j * (s.var[t + 1] - f.pv[t + 1]);
    s.lag_one_cov[t] = j * s.var[t + 1];
  }
  return s;
}

double lgss_log_likelihood(const models::LgssParams& params, const std::vector<double>& y) {
  return scalar_filter(params, y).log_likelihood;
}

std::vector<double> lgss_ffbs(const models::LgssParams& p, const std::vector<double>& y, Rng& rng) {
  const auto f = scalar_filter(p, y);
  const std::size_t horizon = y.size();
  std::vector<double> x(horizon);
  if (horizon == 0) return x;
  x[horizon - 1] = rng.normal(f.fm[horizon - 1], std::sqrt(f.fv[horizon - 1]));
  for (std::size_t t = horizon - 1; t-- > 0;) {
    const double j = f.fv[t] * p.a / f.pv[t + 1];
    const double mean = f.fm[t] + j * (x[t + 1] - p.a * f.fm[t]);
    const double var = f.fv[t] * (1.0 - j * p.a);
    x[t] = rng.normal(mean, std::sqrt(std::max(var, 0.0)));
  }
  return x;
}

}  // namespace pgas::oracles
