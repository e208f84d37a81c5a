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
#include "pgas/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pgas {

std::vector<double> acf(std::span<const double> series, std::size_t max_lag, double center) {
  const std::size_t n = series.size();
  if (n <= max_lag) throw std::invalid_argument("acf: series must be longer than max_lag");
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = series[i] - center;
  double c0 = 0.0;
  for (double v : d) c0 += v * v;
  if (!(c0 > 0.0)) throw std::invalid_argument("acf: zero variance");
  std::vector<double> rho(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double c = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) c += d[i] * d[i + k];
    rho[k] = c / c0;
  }
  return rho;
}

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
  return acf(series, max_lag, mean(series));
}

double update_rate(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("update_rate: need at least two iterations");
  std::size_t changes = 0;
  for (std::size_t n = 1; n < values.size(); ++n)
    if (values[n] != values[n - 1]) ++changes;
  return static_cast<double>(changes) / static_cast<double>(values.size() - 1);
}

double update_rate(const std::vector<Trajectory>& chain, std::size_t t) {
  std::vector<double> values;
  values.reserve(chain.size());
  for (const auto& x : chain) values.push_back(x[t]);
  return update_rate(values);
}

RunningRmse::RunningRmse(std::vector<double> truth) : truth_(std::move(truth)), sum_(truth_.size(), 0.0) {}

double RunningRmse::add(std::span<const double> estimate) {
  if (estimate.size() != truth_.size()) throw std::invalid_argument("running_rmse: estimate length mismatch");
  ++count_;
  const double w = 1.0 / static_cast<double>(count_);
  for (std::size_t t = 0; t < sum_.size(); ++t) sum_[t] += w * (estimate[t] - sum_[t]);
  return value();
}

double RunningRmse::value() const {
  if (truth_.empty()) return 0.0;
  double s = 0.0;
  for (std::size_t t = 0; t < truth_.size(); ++t) {
    const double d = sum_[t] - truth_[t];
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(truth_.size()));
}

std::vector<double> running_rmse(const std::vector<std::vector<double>>& estimates, std::span<const double> truth) {
  RunningRmse r({truth.begin(), truth.end()});
  std::vector<double> out;
  out.reserve(estimates.size());
  for (const auto& e : estimates) out.push_back(r.add(e));
  return out;
}

double effective_sample_size(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return 1.0 / s;
}

double mean(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean: empty series");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("variance: need at least two values");
  const double m = mean(values);
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return s / static_cast<double>(values.size() - 1);
}

double batch_means_standard_error(std::span<const double> values, std::size_t num_batches) {
  const std::size_t size = values.size() / num_batches;
  if (num_batches < 2 || size < 1) throw std::invalid_argument("batch_means: too few values");
  std::vector<double> means(num_batches);
  for (std::size_t b = 0; b < num_batches; ++b) means[b] = mean(values.subspan(b * size, size));
  return std::sqrt(variance(means) / static_cast<double>(num_batches));
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty series");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace pgas
