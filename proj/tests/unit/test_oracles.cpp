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
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "helpers.hpp"
#include "pgas/diagnostics.hpp"
#include "pgas/errors.hpp"
#include "pgas/kernel.hpp"
#include "pgas/learning/lgss.hpp"
#include "pgas/models/lgss.hpp"
#include "pgas/oracles/discrete_toy.hpp"
#include "pgas/oracles/enumeration.hpp"
#include "pgas/oracles/ideal_gibbs.hpp"
#include "pgas/oracles/kalman.hpp"

using namespace pgas;
using oracles::enumerate_kernel;

namespace {

// Posterior means of a stationary scalar LGSS by dense Gaussian conditioning.
std::vector<double> dense_conditional_mean(const models::LgssParams& theta, const std::vector<double>& y) {
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd sxx(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t)
      sxx(s, t) = theta.stationary_variance() * std::pow(theta.a, static_cast<double>(std::abs(s - t)));
  const Eigen::MatrixXd syy = sxx + theta.r * Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd yy = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  const Eigen::VectorXd m = sxx * syy.ldlt().solve(yy);
  return {m.data(), m.data() + n};
}

// Probability that coordinate t of the output equals that of the reference, averaged under π.
double coordinate_rejection(const oracles::DiscreteToyModel& toy, const oracles::ExactKernel& k, std::size_t t) {
  const auto pi = toy.posterior();
  double total = 0.0;
  for (std::size_t r = 0; r < k.dim(); ++r) {
    const auto xr = toy.decode(r);
    for (std::size_t c = 0; c < k.dim(); ++c)
      if (toy.decode(c)[t] == xr[t]) total += pi[r] * k(r, c);
  }
  return total;
}

}  // namespace

TEST_CASE("Kalman smoother examples") {
  const auto single = oracles::lgss_smoother({0.0, 1.0, 0.5}, {1.5});
  CHECK(single.mean[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single.var[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const std::vector<double> y{0.4, -1.3, 2.2, 0.9, -0.1};
  const auto sharp = oracles::lgss_smoother({0.8, 1.0, 1e-10}, y);
  for (std::size_t t = 0; t < y.size(); ++t) CHECK(std::abs(sharp.mean[t] - y[t]) < 1e-4);

  const models::LgssParams theta{0.8, 1.0, 0.5};
  const auto dense = dense_conditional_mean(theta, y);
  const auto rts = oracles::lgss_smoother(theta, y);
  const auto mbf = oracles::mbf_smoother(oracles::as_linear_system(theta), oracles::column(y));
  for (std::size_t t = 0; t < y.size(); ++t) {
    CHECK(std::abs(rts.mean[t] - dense[t]) < 1e-8);
    CHECK(std::abs(mbf.mean[t](0) - dense[t]) < 1e-8);
    CHECK(std::abs(mbf.cov[t](0, 0) - rts.var[t]) < 1e-8);
  }
  CHECK(rts.log_likelihood == doctest::Approx(mbf.log_likelihood).epsilon(1e-12));
  CHECK(oracles::lgss_log_likelihood(theta, y) == doctest::Approx(rts.log_likelihood).epsilon(1e-12));

  // Dense log-likelihood.
  const auto n = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd syy(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t)
      syy(s, t) = theta.stationary_variance() * std::pow(theta.a, static_cast<double>(std::abs(s - t))) +
                  (s == t ? theta.r : 0.0);
  const Eigen::VectorXd yy = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  const Eigen::LLT<Eigen::MatrixXd> llt(syy);
  const double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double dense_ll = -0.5 * (static_cast<double>(n) * std::log(2.0 * M_PI) + logdet + yy.dot(llt.solve(yy)));
  CHECK(rts.log_likelihood == doctest::Approx(dense_ll).epsilon(1e-10));
}

TEST_CASE("Kalman filter reports the failing time index") {
  auto sys = oracles::as_linear_system(models::LgssParams{0.5, 1.0, 0.5});
  sys.R(0, 0) = -10.0;
  try {
    oracles::kalman_filter(sys, oracles::column({0.0, 1.0}));
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(e.time_index() == 0);
  }
}

TEST_CASE("FFBS draws follow the smoothing distribution") {
  Rng rng(50);
  const models::LgssParams theta{0.8, 1.0, 0.5};
  const auto data = models::simulate_lgss(theta, 10, rng);
  const auto exact = oracles::lgss_smoother(theta, data.y);
  std::vector<std::vector<double>> draws(10);
  for (int n = 0; n < 20000; ++n) {
    const auto x = oracles::lgss_ffbs(theta, data.y, rng);
    for (std::size_t t = 0; t < 10; ++t) draws[t].push_back(x[t]);
  }
  int within = 0;
  for (std::size_t t = 0; t < 10; ++t) {
    const auto ms = testing::mean_se(draws[t]);
    if (std::abs(ms.mean - exact.mean[t]) < 3.0 * ms.se) ++within;
    CHECK(std::abs(variance(draws[t]) / exact.var[t] - 1.0) < 0.05);
  }
  CHECK(within >= 9);
}

TEST_CASE("ideal Gibbs is deterministic given the seed") {
  Rng data_rng(51);
  const auto data = models::simulate_lgss({0.8, 1.0, 0.5}, 30, data_rng);
  Rng a(9);
  Rng b(9);
  const auto ca = oracles::ideal_gibbs_lgss(data.y, {}, 200, 50, {-0.8, 0.5, 1.0}, a);
  const auto cb = oracles::ideal_gibbs_lgss(data.y, {}, 200, 50, {-0.8, 0.5, 1.0}, b);
  CHECK(ca.theta == cb.theta);
  CHECK(ca.iterations() == 200);
  CHECK(ca.parameter(0).size() == 150);
}

TEST_CASE("enumerated kernels are invariant and row-stochastic") {
  for (Flavor f : {Flavor::kPG, Flavor::kPGAS, Flavor::kPGBS}) {
    for (bool perturbed : {false, true}) {
      const auto toy = oracles::example_toy(perturbed);
      const auto k = enumerate_kernel(toy, f, 2);
      CHECK(k.max_row_sum_error() < 1e-12);
      CHECK(k.invariance_residual(toy.posterior()) < 1e-12);
    }
    const auto one = enumerate_kernel(oracles::example_toy(), f, 1);
    for (std::size_t r = 0; r < one.dim(); ++r)
      for (std::size_t c = 0; c < one.dim(); ++c) CHECK(one(r, c) == (r == c ? 1.0 : 0.0));
  }

  Rng rng(52);
  int checked = 0;
  for (std::size_t states : {2u, 3u}) {
    for (std::size_t horizon : {1u, 2u, 3u}) {
      for (std::size_t n : {1u, 2u, 3u}) {
        const double atoms = std::pow(static_cast<double>(states), static_cast<double>(horizon)) *
                             std::pow(static_cast<double>(n * states * n), static_cast<double>(horizon));
        for (bool bootstrap : {true, false}) {
          const auto toy = oracles::random_toy(states, horizon, bootstrap, rng);
          for (Flavor f : {Flavor::kPG, Flavor::kPGAS, Flavor::kPGBS}) {
            if (atoms > oracles::kMaxEnumerationAtoms) {
              CHECK_THROWS_AS(enumerate_kernel(toy, f, n), std::length_error);
              continue;
            }
            const auto k = enumerate_kernel(toy, f, n);
            CHECK(k.max_row_sum_error() < 1e-12);
            CHECK(k.invariance_residual(toy.posterior()) < 1e-12);
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("PGAS and PGBS kernels coincide exactly under the bootstrap proposal") {
  Rng rng(53);
  for (int rep = 0; rep < 5; ++rep) {
    const auto toy = oracles::random_toy(2, 2, true, rng);
    const auto as = enumerate_kernel(toy, Flavor::kPGAS, 2);
    const auto bs = enumerate_kernel(toy, Flavor::kPGBS, 2);
    CHECK(as.max_abs_difference(bs) < 1e-12);
  }
  const auto bootstrap = oracles::example_toy(false);
  CHECK(enumerate_kernel(bootstrap, Flavor::kPGAS, 2).max_abs_difference(enumerate_kernel(bootstrap, Flavor::kPGBS, 2)) <
        1e-12);
  const auto perturbed = oracles::example_toy(true);
  CHECK(enumerate_kernel(perturbed, Flavor::kPGAS, 2).max_abs_difference(enumerate_kernel(perturbed, Flavor::kPGBS, 2)) >
        1e-6);
}

TEST_CASE("PG rejects the first coordinate more often than PGAS") {
  const auto toy = oracles::example_toy();
  const auto pg = enumerate_kernel(toy, Flavor::kPG, 2);
  const auto as = enumerate_kernel(toy, Flavor::kPGAS, 2);
  CHECK(coordinate_rejection(toy, pg, 0) > coordinate_rejection(toy, as, 0));
}

TEST_CASE("kernel powers converge geometrically to the target") {
  const auto toy = oracles::example_toy();
  const auto pi = toy.posterior();
  for (Flavor f : {Flavor::kPG, Flavor::kPGAS}) {
    const auto k = enumerate_kernel(toy, f, 2);
    auto power = k;
    std::vector<double> tv;
    for (int n = 1; n <= 8; ++n) {
      tv.push_back(oracles::max_tv_to(power, pi));
      power = power.multiply(k);
    }
    for (std::size_t n = 1; n < tv.size(); ++n) CHECK(tv[n] <= tv[n - 1] + 1e-15);
    // Fitted contraction rate over the steps where TV is resolvable.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t n = 0; n < tv.size(); ++n) {
      if (tv[n] < 1e-13) continue;
      const double x = static_cast<double>(n);
      sx += x;
      sy += std::log(tv[n]);
      sxx += x * x;
      sxy += x * std::log(tv[n]);
      ++m;
    }
    REQUIRE(m >= 2);
    const double slope = (sxy - sx * sy / m) / (sxx - sx * sx / m);
    CHECK(std::exp(slope) < 1.0);
  }
}

TEST_CASE("sampled sweeps reproduce the enumerated kernel") {
  const auto toy = oracles::example_toy(true);
  const oracles::DiscreteToyAdapter model(toy);
  Rng rng(54);
  for (Flavor f : {Flavor::kPG, Flavor::kPGAS, Flavor::kPGBS}) {
    const auto exact = enumerate_kernel(toy, f, 2);
    KernelConfig cfg;
    cfg.num_particles = 2;
    cfg.flavor = f;
    for (std::size_t r = 0; r < exact.dim(); ++r) {
      const Trajectory ref = model.path(r);
      std::vector<int> counts(exact.dim(), 0);
      const int draws = 20000;
      for (int n = 0; n < draws; ++n) ++counts[model.index_of(kernel_sweep(model, ref, cfg, rng).trajectory)];
      for (std::size_t c = 0; c < exact.dim(); ++c) {
        const double p = exact(r, c);
        const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / draws);
        CHECK(std::abs(static_cast<double>(counts[c]) / draws - p) < 5.0 * se + 1e-9);
      }
    }
  }
}
