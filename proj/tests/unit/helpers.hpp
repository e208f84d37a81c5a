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

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "pgas/model.hpp"
#include "pgas/rng.hpp"

namespace testing {

// Hand-rolled generators for property tests.
inline std::vector<double> random_log_weights(pgas::Rng& rng, std::size_t n, double spread = 5.0) {
  std::vector<double> w(n);
  for (double& v : w) v = spread * rng.normal();
  return w;
}

inline std::vector<double> random_probabilities(pgas::Rng& rng, std::size_t n) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& v : p) s += (v = -std::log(1.0 - rng.uniform()));
  for (double& v : p) v /= s;
  return p;
}

inline pgas::Trajectory scalar_path(const std::vector<double>& x) { return pgas::Trajectory(x.size(), 1, x); }

// Mean and standard error of repeated scalar estimates.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return {m, std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
}

}  // namespace testing

#include "pgas/particle_system.hpp"
#include "pgas/smc.hpp"

namespace testing {

// Presents a Markov model as a general one, forcing ancestor weights through full tail replays.
class AsNonMarkov final : public pgas::Model {
 public:
  explicit AsNonMarkov(const pgas::Model& inner) : inner_(inner) {}

  std::size_t horizon() const override { return inner_.horizon(); }
  std::size_t state_dim() const override { return inner_.state_dim(); }
  std::size_t summary_dim() const override { return inner_.summary_dim(); }
  bool is_markov() const override { return false; }
  void initial_summary(std::span<double> out) const override { inner_.initial_summary(out); }
  void advance_summary(std::size_t t, pgas::Summary prev, pgas::State x, std::span<double> out) const override {
    inner_.advance_summary(t, prev, x, out);
  }
  double log_transition(std::size_t t, pgas::Summary prev, pgas::State x) const override {
    return inner_.log_transition(t, prev, x);
  }
  double log_observation(std::size_t t, pgas::Summary prev, pgas::State x) const override {
    return inner_.log_observation(t, prev, x);
  }
  void sample_transition(std::size_t t, pgas::Summary prev, std::span<double> out, pgas::Rng& rng) const override {
    inner_.sample_transition(t, prev, out, rng);
  }

 private:
  const pgas::Model& inner_;
};

// Particle system whose first time step holds the given scalar states and log-weights.
inline pgas::ParticleSystem first_step_system(const pgas::Model& model, const std::vector<double>& states,
                                              const std::vector<double>& log_weights) {
  pgas::ParticleSystem ps(states.size(), model.horizon(), 1, model.summary_dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double x = states[i];
    pgas::detail::place(model, ps, 0, i, i, pgas::State(&x, 1));
    ps.log_weights(0)[i] = log_weights[i];
  }
  return ps;
}

}  // namespace testing
