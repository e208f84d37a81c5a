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
#include "pgas/models/degenerate_lgss.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace pgas::models {

namespace {

double gaussian_log_norm(const Eigen::MatrixXd& cov) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("covariance is not positive definite");
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return -0.5 * (static_cast<double>(cov.rows()) * std::log(2.0 * std::numbers::pi) + log_det);
}

Eigen::VectorXd standard_normal(std::size_t n, Rng& rng) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
  return v;
}

}  // namespace

double DegenerateSystem::spectral_radius() const {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void DegenerateSystem::validate() const {
  if (A.rows() != A.cols()) throw std::invalid_argument("degenerate system: A must be square");
  if (x_dim < 1 || x_dim > order()) throw std::invalid_argument("degenerate system: invalid x_dim");
  if (static_cast<std::size_t>(C.cols()) != order()) throw std::invalid_argument("degenerate system: C has wrong width");
  if (static_cast<std::size_t>(Q.rows()) != x_dim || Q.rows() != Q.cols()) {
    throw std::invalid_argument("degenerate system: Q must be x_dim × x_dim");
  }
  if (R.rows() != C.rows() || R.rows() != R.cols()) throw std::invalid_argument("degenerate system: R has wrong shape");
  if (static_cast<std::size_t>(z1.size()) != z_dim()) throw std::invalid_argument("degenerate system: z1 has wrong size");
  if (!(spectral_radius() < 1.0)) throw std::invalid_argument("degenerate system: spectral radius must be < 1");
  gaussian_log_norm(Q);
  gaussian_log_norm(R);
}

DegenerateData simulate_degenerate(const DegenerateSystem& sys, std::size_t horizon, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(sys.order());
  const auto nx = static_cast<Eigen::Index>(sys.x_dim);
  const Eigen::MatrixXd lq = Eigen::LLT<Eigen::MatrixXd>(sys.Q).matrixL();
  const Eigen::MatrixXd lr = Eigen::LLT<Eigen::MatrixXd>(sys.R).matrixL();
  DegenerateData data{Eigen::MatrixXd(horizon, sys.outputs()), Eigen::MatrixXd(horizon, d)};
  Eigen::VectorXd s(d);
  s.head(nx) = lq * standard_normal(sys.x_dim, rng);
  s.tail(d - nx) = sys.z1;
  for (std::size_t t = 0; t < horizon; ++t) {
    const auto row = static_cast<Eigen::Index>(t);
    if (t > 0) {
      Eigen::VectorXd next = sys.A * s;
      next.head(nx) += lq * standard_normal(sys.x_dim, rng);
      s = next;
    }
    data.state.row(row) = s.transpose();
    data.y.row(row) = (sys.C * s + lr * standard_normal(sys.outputs(), rng)).transpose();
  }
  return data;
}

DegenerateSystem companion_system(const std::vector<double>& poly, const Eigen::RowVectorXd& c, double q, double r) {
  // poly = (c1, ..., cd) of z^d + c1 z^{d-1} + ... + cd.
  const auto d = static_cast<Eigen::Index>(poly.size());
  DegenerateSystem sys;
  sys.A = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) sys.A(0, j) = -poly[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < d; ++i) sys.A(i, i - 1) = 1.0;
  sys.C = c;
  sys.Q = Eigen::MatrixXd::Constant(1, 1, q);
  sys.R = Eigen::MatrixXd::Constant(1, 1, r);
  sys.x_dim = 1;
  sys.z1 = Eigen::VectorXd::Zero(d - 1);
  sys.validate();
  return sys;
}

DegenerateSystem fourth_order_example() {
  using cd = std::complex<double>;
  const cd roots[] = {cd(-0.65, 0.0), cd(-0.12, 0.0), cd(0.22, 0.10), cd(0.22, -0.10)};
  // Expand Π (z − p_i).
  std::vector<cd> coeffs{cd(1.0, 0.0)};
  for (const cd& p : roots) {
    std::vector<cd> next(coeffs.size() + 1, cd(0.0, 0.0));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k] += coeffs[k];
      next[k + 1] -= coeffs[k] * p;
    }
    coeffs = next;
  }
  std::vector<double> poly;
  for (std::size_t k = 1; k < coeffs.size(); ++k) poly.push_back(coeffs[k].real());
  Eigen::RowVectorXd c(4);
  c << 1.0, 0.5, 0.25, 0.125;
  return companion_system(poly, c, 0.1, 0.1);
}

DegenerateSystem random_stable_system(std::size_t order, std::size_t outputs, Rng& rng) {
  if (order < 2 || outputs < 1) throw std::invalid_argument("random_stable_system: need order >= 2 and outputs >= 1");
  const auto d = static_cast<Eigen::Index>(order);
  const auto p = static_cast<Eigen::Index>(outputs);
  DegenerateSystem sys;
  sys.A.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sys.A(i, j) = rng.normal();
  const double target = 0.5 + 0.45 * rng.uniform();
  sys.A *= target / sys.spectral_radius();
  sys.C.resize(p, d);
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < d; ++j) sys.C(i, j) = rng.normal();
  sys.x_dim = 1;
  sys.Q = Eigen::MatrixXd::Constant(1, 1, 0.1);
  sys.R = 0.1 * Eigen::MatrixXd::Identity(p, p);
  sys.z1 = Eigen::VectorXd::Zero(d - 1);
  sys.validate();
  return sys;
}

CollapsedDegenerateModel::CollapsedDegenerateModel(DegenerateSystem system, Eigen::MatrixXd observations)
    : sys_(std::move(system)), y_(std::move(observations)) {
  sys_.validate();
  if (static_cast<std::size_t>(y_.cols()) != sys_.outputs()) {
    throw std::invalid_argument("degenerate model: observation width does not match C");
  }
  q_chol_ = Eigen::LLT<Eigen::MatrixXd>(sys_.Q).matrixL();
  q_inv_ = sys_.Q.inverse();
  r_inv_ = sys_.R.inverse();
  q_log_norm_ = gaussian_log_norm(sys_.Q);
  r_log_norm_ = gaussian_log_norm(sys_.R);
}

void CollapsedDegenerateModel::initial_summary(std::span<double> out) const {
  // Only the z-part is used at t = 0: it holds z_1.
  const auto nx = sys_.x_dim;
  for (std::size_t i = 0; i < nx; ++i) out[i] = 0.0;
  for (std::size_t i = 0; i < sys_.z_dim(); ++i) out[nx + i] = sys_.z1(static_cast<Eigen::Index>(i));
}

void CollapsedDegenerateModel::predict(std::size_t t, Summary prev, Eigen::Ref<Eigen::VectorXd> x_mean,
                                       Eigen::Ref<Eigen::VectorXd> z) const {
  const auto nx = static_cast<Eigen::Index>(sys_.x_dim);
  const auto nz = static_cast<Eigen::Index>(sys_.z_dim());
  const Eigen::Map<const Eigen::VectorXd> s(prev.data(), nx + nz);
  if (t == 0) {
    x_mean.setZero();
    z = s.tail(nz);
    return;
  }
  x_mean.noalias() = sys_.A11() * s.head(nx) + sys_.A12() * s.tail(nz);
  z.noalias() = sys_.A21() * s.head(nx) + sys_.A22() * s.tail(nz);
}

double CollapsedDegenerateModel::log_obs(std::size_t t, State x, const Eigen::VectorXd& z) const {
  const auto nx = static_cast<Eigen::Index>(sys_.x_dim);
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), nx);
  const Eigen::VectorXd resid =
      y_.row(static_cast<Eigen::Index>(t)).transpose() - sys_.C.leftCols(nx) * xv - sys_.C.rightCols(z.size()) * z;
  return r_log_norm_ - 0.5 * resid.dot(r_inv_ * resid);
}

void CollapsedDegenerateModel::advance_summary(std::size_t t, Summary prev, State x, std::span<double> out) const {
  Eigen::VectorXd x_mean(sys_.x_dim);
  Eigen::VectorXd z(sys_.z_dim());
  predict(t, prev, x_mean, z);
  std::copy(x.begin(), x.end(), out.begin());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[sys_.x_dim + static_cast<std::size_t>(i)] = z(i);
}

double CollapsedDegenerateModel::log_transition(std::size_t t, Summary prev, State x) const {
  Eigen::VectorXd x_mean(sys_.x_dim);
  Eigen::VectorXd z(sys_.z_dim());
  predict(t, prev, x_mean, z);
  const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(x.data(), x_mean.size()) - x_mean;
  return q_log_norm_ - 0.5 * d.dot(q_inv_ * d);
}

double CollapsedDegenerateModel::log_observation(std::size_t t, Summary prev, State x) const {
  Eigen::VectorXd x_mean(sys_.x_dim);
  Eigen::VectorXd z(sys_.z_dim());
  predict(t, prev, x_mean, z);
  return log_obs(t, x, z);
}

double CollapsedDegenerateModel::log_factor_and_advance(std::size_t t, Summary prev, State x,
                                                        std::span<double> out) const {
  Eigen::VectorXd x_mean(sys_.x_dim);
  Eigen::VectorXd z(sys_.z_dim());
  predict(t, prev, x_mean, z);
  const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(x.data(), x_mean.size()) - x_mean;
  const double lf = q_log_norm_ - 0.5 * d.dot(q_inv_ * d);
  const double lg = log_obs(t, x, z);
  std::copy(x.begin(), x.end(), out.begin());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[sys_.x_dim + static_cast<std::size_t>(i)] = z(i);
  return lf + lg;
}

void CollapsedDegenerateModel::sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const {
  Eigen::VectorXd x_mean(sys_.x_dim);
  Eigen::VectorXd z(sys_.z_dim());
  predict(t, prev, x_mean, z);
  const Eigen::VectorXd x = x_mean + q_chol_ * standard_normal(sys_.x_dim, rng);
  for (Eigen::Index i = 0; i < x.size(); ++i) out[static_cast<std::size_t>(i)] = x(i);
}

}  // namespace pgas::models
