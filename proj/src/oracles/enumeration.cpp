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
#include "pgas/oracles/enumeration.hpp"

#include <cmath>
#include <stdexcept>

namespace pgas::oracles {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

class Enumerator {
 public:
  Enumerator(const DiscreteToyModel& toy, Flavor flavor, std::size_t n)
      : toy_(toy),
        flavor_(flavor),
        n_(n),
        ref_slot_(n - 1),
        x_(toy.horizon, std::vector<std::size_t>(n)),
        a_(toy.horizon, std::vector<std::size_t>(n)),
        w_(toy.horizon, std::vector<double>(n)),
        acc_(toy.num_paths() * toy.num_paths()) {}

  ExactKernel run() {
    const std::size_t dim = toy_.num_paths();
    for (std::size_t r = 0; r < dim; ++r) {
      reference_ = toy_.decode(r);
      row_ = r;
      step(0, 0, 1.0);
    }
    ExactKernel kernel(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) kernel(r, c) = acc_[r * dim + c].value();
    return kernel;
  }

 private:
  // γ_{len}(x_{0:len-1}) of an explicit path prefix.
  double prefix_gamma(const std::vector<std::size_t>& path, std::size_t len) const {
    if (len == 0) return 1.0;
    double g = toy_.initial[path[0]] * toy_.emission[0][path[0]];
    for (std::size_t t = 1; t < len; ++t) g *= toy_.transition[path[t - 1]][path[t]] * toy_.emission[t][path[t]];
    return g;
  }

  double weight(std::size_t t, std::size_t prev, std::size_t x) const {
    if (t == 0) return toy_.initial[x] * toy_.emission[0][x] / toy_.initial_proposal[x];
    return toy_.transition[prev][x] * toy_.emission[t][x] / toy_.proposal[prev][x];
  }

  std::vector<std::size_t> ancestral_path(std::size_t t, std::size_t i) const {
    std::vector<std::size_t> path(t + 1);
    std::size_t b = i;
    for (std::size_t s = t + 1; s-- > 0;) {
      path[s] = x_[s][b];
      if (s > 0) b = a_[s][b];
    }
    return path;
  }

  // Probabilities ∝ w_{t-1}^i γ_T(x^i_{0:t-1}, tail_{t:T-1}) / γ_{t-1}(x^i_{0:t-1}).
  std::vector<double> attach_probabilities(std::size_t t, const std::vector<std::size_t>& tail) const {
    std::vector<double> p(n_);
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      auto path = ancestral_path(t - 1, i);
      const double denom = prefix_gamma(path, t);
      for (std::size_t s = t; s < toy_.horizon; ++s) path.push_back(tail[s]);
      p[i] = denom > 0.0 ? w_[t - 1][i] * prefix_gamma(path, toy_.horizon) / denom : 0.0;
      total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
  }

  void step(std::size_t t, std::size_t i, double prob) {
    if (prob == 0.0) return;
    if (t == toy_.horizon) {
      finish(prob);
      return;
    }
    const std::size_t S = toy_.num_states;
    if (i < ref_slot_) {
      if (t == 0) {
        for (std::size_t x = 0; x < S; ++x) {
          x_[0][i] = x;
          w_[0][i] = weight(0, 0, x);
          step(t, i + 1, prob * toy_.initial_proposal[x]);
        }
      } else {
        const double total = sum(w_[t - 1]);
        for (std::size_t a = 0; a < n_; ++a) {
          const double pa = w_[t - 1][a] / total;
          if (pa == 0.0) continue;
          const std::size_t prev = x_[t - 1][a];
          for (std::size_t x = 0; x < S; ++x) {
            const double px = toy_.proposal[prev][x];
            if (px == 0.0) continue;
            x_[t][i] = x;
            a_[t][i] = a;
            w_[t][i] = weight(t, prev, x);
            step(t, i + 1, prob * pa * px);
          }
        }
      }
      return;
    }

    // Reference slot.
    const std::size_t x = reference_[t];
    x_[t][ref_slot_] = x;
    if (t == 0) {
      w_[0][ref_slot_] = weight(0, 0, x);
      step(1, 0, prob);
      return;
    }
    if (flavor_ == Flavor::kPGAS) {
      const auto p = attach_probabilities(t, reference_);
      for (std::size_t a = 0; a < n_; ++a) {
        if (p[a] == 0.0) continue;
        a_[t][ref_slot_] = a;
        w_[t][ref_slot_] = weight(t, x_[t - 1][a], x);
        step(t + 1, 0, prob * p[a]);
      }
    } else {
      a_[t][ref_slot_] = ref_slot_;
      w_[t][ref_slot_] = weight(t, x_[t - 1][ref_slot_], x);
      step(t + 1, 0, prob);
    }
  }

  void finish(double prob) {
    const std::size_t last = toy_.horizon - 1;
    const double total = sum(w_[last]);
    for (std::size_t k = 0; k < n_; ++k) {
      const double pk = w_[last][k] / total;
      if (pk == 0.0) continue;
      if (flavor_ == Flavor::kPGBS) {
        std::vector<std::size_t> tail(toy_.horizon);
        tail[last] = x_[last][k];
        backward(last, tail, prob * pk);
      } else {
        add(toy_.encode(ancestral_path(last, k)), prob * pk);
      }
    }
  }

  // Backward recursion: the tail x̃_{t:T-1} is fixed, choose j_{t-1}.
  void backward(std::size_t t, std::vector<std::size_t>& tail, double prob) {
    if (t == 0) {
      add(toy_.encode(tail), prob);
      return;
    }
    const auto p = attach_probabilities(t, tail);
    for (std::size_t j = 0; j < n_; ++j) {
      if (p[j] == 0.0) continue;
      tail[t - 1] = x_[t - 1][j];
      backward(t - 1, tail, prob * p[j]);
    }
  }

  void add(std::size_t column, double prob) { acc_[row_ * toy_.num_paths() + column].add(prob); }

  static double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }

  const DiscreteToyModel& toy_;
  Flavor flavor_;
  std::size_t n_;
  std::size_t ref_slot_;
  std::vector<std::vector<std::size_t>> x_;
  std::vector<std::vector<std::size_t>> a_;
  std::vector<std::vector<double>> w_;
  std::vector<CompensatedSum> acc_;
  std::vector<std::size_t> reference_;
  std::size_t row_ = 0;
};

}  // namespace

double ExactKernel::max_row_sum_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    CompensatedSum s;
    for (std::size_t c = 0; c < dim_; ++c) s.add((*this)(r, c));
    worst = std::max(worst, std::abs(s.value() - 1.0));
  }
  return worst;
}

double ExactKernel::invariance_residual(const std::vector<double>& pi) const {
  double worst = 0.0;
  for (std::size_t c = 0; c < dim_; ++c) {
    CompensatedSum s;
    for (std::size_t r = 0; r < dim_; ++r) s.add(pi[r] * (*this)(r, c));
    worst = std::max(worst, std::abs(s.value() - pi[c]));
  }
  return worst;
}

ExactKernel ExactKernel::multiply(const ExactKernel& other) const {
  ExactKernel out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) {
      CompensatedSum s;
      for (std::size_t k = 0; k < dim_; ++k) s.add((*this)(r, k) * other(k, c));
      out(r, c) = s.value();
    }
  return out;
}

double ExactKernel::max_abs_difference(const ExactKernel& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < p_.size(); ++i) worst = std::max(worst, std::abs(p_[i] - other.p_[i]));
  return worst;
}

ExactKernel enumerate_kernel(const DiscreteToyModel& toy, Flavor flavor, std::size_t num_particles) {
  toy.validate();
  if (num_particles < 1) throw std::invalid_argument("enumerate_kernel: N must be >= 1");
  const double s = static_cast<double>(toy.num_states);
  const double n = static_cast<double>(num_particles);
  const double horizon = static_cast<double>(toy.horizon);
  const double atoms = std::pow(s, horizon) * std::pow(n * s * n, horizon);
  if (atoms > kMaxEnumerationAtoms) throw std::length_error("enumerate_kernel: model too large to enumerate");
  return Enumerator(toy, flavor, num_particles).run();
}

double max_tv_to(const ExactKernel& kernel, const std::vector<double>& pi) {
  double worst = 0.0;
  for (std::size_t r = 0; r < kernel.dim(); ++r) {
    double tv = 0.0;
    for (std::size_t c = 0; c < kernel.dim(); ++c) tv += std::abs(kernel(r, c) - pi[c]);
    worst = std::max(worst, 0.5 * tv);
  }
  return worst;
}

}  // namespace pgas::oracles
