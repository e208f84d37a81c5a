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

#include "doctest.h"
#include "helpers.hpp"
#include "pgas/diagnostics.hpp"

using namespace pgas;

TEST_CASE("autocorrelation") {
  Rng rng(60);
  std::vector<double> noise(100000);
  for (double& v : noise) v = rng.normal();
  const auto white = acf(noise, 5);
  CHECK(white[0] == doctest::Approx(1.0));
  CHECK(std::abs(white[1]) < 0.02);

  std::vector<double> ar(100000);
  ar[0] = rng.normal() / std::sqrt(1.0 - 0.81);
  for (std::size_t t = 1; t < ar.size(); ++t) ar[t] = 0.9 * ar[t - 1] + rng.normal();
  const double rho1 = acf(ar, 1)[1];
  CHECK(rho1 >= 0.88);
  CHECK(rho1 <= 0.92);

  CHECK_THROWS_AS(acf(std::vector<double>(10, 3.0), 2), std::invalid_argument);
  CHECK_THROWS_AS(acf(std::vector<double>{1.0, 2.0}, 2), std::invalid_argument);

  // Affine invariance with the center transformed alongside.
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(200);
    for (double& v : x) v = rng.normal();
    const double a = 0.1 + 5.0 * rng.uniform();
    const double b = 10.0 * rng.normal();
    const double c = rng.normal();
    std::vector<double> y;
    for (double v : x) y.push_back(a * v + b);
    const auto rx = acf(x, 10, c);
    const auto ry = acf(y, 10, a * c + b);
    for (std::size_t k = 0; k <= 10; ++k) CHECK(ry[k] == doctest::Approx(rx[k]).epsilon(1e-9));
  }
}

TEST_CASE("update rate") {
  CHECK(update_rate(std::vector<double>{2.0, 2.0, 2.0, 2.0}) == 0.0);
  CHECK(update_rate(std::vector<double>{1.0, 2.0, 3.0, 4.0}) == 1.0);
  CHECK(update_rate(std::vector<double>{1.0, 1.0, 2.0, 2.0}) == doctest::Approx(1.0 / 3.0));

  Rng rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> chain(40);
    for (double& v : chain) v = std::floor(3.0 * rng.uniform());
    std::vector<double> relabeled;
    for (double v : chain) relabeled.push_back(std::exp(v) - 7.0);
    CHECK(update_rate(chain) == update_rate(relabeled));
  }

  std::vector<Trajectory> paths;
  for (double v : {1.0, 1.0, 2.0, 2.0}) paths.push_back(testing::scalar_path({v, 5.0}));
  CHECK(update_rate(paths, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(update_rate(paths, 1) == 0.0);
}

TEST_CASE("running RMSE") {
  const std::vector<double> truth{1.0, -2.0, 0.5};
  RunningRmse exact(truth);
  for (int n = 0; n < 10; ++n) CHECK(exact.add(truth) == 0.0);

  RunningRmse offset(truth);
  std::vector<double> shifted;
  for (double v : truth) shifted.push_back(v + 0.7);
  for (int n = 0; n < 10; ++n) CHECK(offset.add(shifted) == doctest::Approx(0.7));
  CHECK(offset.count() == 10);

  const auto batch = running_rmse({truth, shifted}, truth);
  CHECK(batch[0] == 0.0);
  CHECK(batch[1] == doctest::Approx(0.35));

  // ε_n of i.i.d. draws around the truth decays like n^{-1/2}.
  Rng rng(62);
  std::vector<double> zero(20, 0.0);
  std::vector<double> log_n;
  std::vector<double> log_eps;
  for (int rep = 0; rep < 20; ++rep) {
    RunningRmse r(zero);
    std::vector<double> draw(20);
    for (std::size_t n = 1; n <= 10000; ++n) {
      for (double& v : draw) v = rng.normal();
      const double e = r.add(draw);
      if (n % 500 == 0) {
        log_n.push_back(std::log(static_cast<double>(n)));
        log_eps.push_back(std::log(e));
      }
    }
  }
  const double mx = mean(log_n);
  const double my = mean(log_eps);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = 0; k < log_n.size(); ++k) {
    sxy += (log_n[k] - mx) * (log_eps[k] - my);
    sxx += (log_n[k] - mx) * (log_n[k] - mx);
  }
  const double slope = sxy / sxx;
  CHECK(slope >= -0.6);
  CHECK(slope <= -0.4);
}

TEST_CASE("effective sample size and summaries") {
  CHECK(effective_sample_size(std::vector<double>(8, 0.125)) == doctest::Approx(8.0));
  CHECK(effective_sample_size(std::vector<double>{0.0, 1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(effective_sample_size(std::vector<double>{0.5, 0.25, 0.25}) == doctest::Approx(2.667).epsilon(1e-3));

  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(v) == 2.5);
  CHECK(variance(v) == doctest::Approx(5.0 / 3.0));
  CHECK(quantile(v, 0.0) == 1.0);
  CHECK(quantile(v, 1.0) == 4.0);
  CHECK(quantile(v, 0.5) == doctest::Approx(2.5));

  Rng rng(63);
  std::vector<double> iid(50000);
  for (double& x : iid) x = rng.normal();
  const double se = batch_means_standard_error(iid);
  CHECK(se == doctest::Approx(1.0 / std::sqrt(50000.0)).epsilon(0.3));
}
