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
#include <span>
#include <vector>

#include "pgas/rng.hpp"

namespace pgas {

using State = std::span<const double>;
using Summary = std::span<const double>;

// One point x_{1:T} of the latent space, stored row-major (time × state_dim).
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::size_t length, std::size_t dim) : length_(length), dim_(dim), values_(length * dim) {}
  Trajectory(std::size_t length, std::size_t dim, std::vector<double> values);

  std::size_t length() const { return length_; }
  std::size_t dim() const { return dim_; }

  State state(std::size_t t) const { return {values_.data() + t * dim_, dim_}; }
  std::span<double> state(std::size_t t) { return {values_.data() + t * dim_, dim_}; }

  // First coordinate of x_t; convenient for scalar-state models.
  double operator[](std::size_t t) const { return values_[t * dim_]; }

  const std::vector<double>& values() const { return values_; }

  bool operator==(const Trajectory&) const = default;

 private:
  std::size_t length_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

// A read-only view of states x_{from}, ..., x_{T-1} of some path. Used for reference tails
// and backward-simulated tails alike.
class TailView {
 public:
  TailView(const Trajectory& path, std::size_t from) : path_(&path), from_(from) {}

  std::size_t from() const { return from_; }
  std::size_t end() const { return path_->length(); }
  State state(std::size_t t) const { return path_->state(t); }

 private:
  const Trajectory* path_;
  std::size_t from_;
};

// A sequential latent variable model
//
//   x_t ~ f_t(x_t | x_{1:t-1}),   y_t ~ g_t(y_t | x_{1:t}),   t = 0, ..., T-1,
//
// with data and parameters fixed at construction. The unnormalized target is
// γ_t(x_{1:t}) = Π_{s≤t} f_s g_s. Dependence on the history enters only through a
// deterministic summary of x_{1:t-1} of fixed size, advanced one state at a time. For
// Markov models the summary is the previous state.
//
// Instances are immutable and may be shared across threads.
class Model {
 public:
  virtual ~Model() = default;

  virtual std::size_t horizon() const = 0;
  virtual std::size_t state_dim() const = 0;
  virtual std::size_t summary_dim() const = 0;

  // True when f and g depend on the history only through x_{t-1} (an SSM). Ancestor and
  // backward weights then use the one-step transition density alone.
  virtual bool is_markov() const = 0;

  // Summary of the empty history.
  virtual void initial_summary(std::span<double> out) const = 0;
  // Summary of x_{1:t} given the summary of x_{1:t-1} and x_t.
  virtual void advance_summary(std::size_t t, Summary prev, State x, std::span<double> out) const = 0;

  virtual double log_transition(std::size_t t, Summary prev, State x) const = 0;
  virtual double log_observation(std::size_t t, Summary prev, State x) const = 0;
  virtual void sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const = 0;

  // Proposal r_t(x_t | x_{1:t-1}); the bootstrap proposal r = f unless overridden.
  virtual bool bootstrap_proposal() const { return true; }
  virtual void sample_proposal(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const {
    sample_transition(t, prev, out, rng);
  }
  virtual double log_proposal(std::size_t t, Summary prev, State x) const {
    return log_transition(t, prev, x);
  }

  // log f_t + log g_t, writing the advanced summary to `out`. Models whose f/g and summary
  // share work (e.g. simulators) override this; it is what tail replays call.
  virtual double log_factor_and_advance(std::size_t t, Summary prev, State x, std::span<double> out) const;

  // log W_t = log f + log g - log r. Under the bootstrap proposal this is log g exactly.
  double log_weight(std::size_t t, Summary prev, State x) const;

  // log γ_{t}(x_{1:t}) for the first `length` states of a path.
  double log_gamma(const Trajectory& path, std::size_t length) const;
  double log_gamma(const Trajectory& path) const { return log_gamma(path, path.length()); }

  // Summary after x_{1:length} of a path.
  std::vector<double> summary_of(const Trajectory& path, std::size_t length) const;
};

}  // namespace pgas
