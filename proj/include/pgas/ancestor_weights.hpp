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
#include <functional>
#include <span>
#include <vector>

#include "pgas/model.hpp"
#include "pgas/particle_system.hpp"
#include "pgas/rng.hpp"

namespace pgas {

// How many future factors enter the ancestor (or backward) weights.
struct TruncationPolicy {
  enum class Kind { kFull, kFixed, kAdaptive };

  Kind kind = Kind::kFull;
  std::size_t level = 1;          // ℓ for kFixed
  double upsilon = 0.1;           // forgetting factor of the TV moving average
  double tau = 1e-2;              // stopping threshold on the moving average
  double initial_average = 1.0;   // moving average before the first TV distance is known

  static TruncationPolicy full() { return {}; }
  static TruncationPolicy fixed(std::size_t level) { return {Kind::kFixed, level}; }
  static TruncationPolicy adaptive(double upsilon, double tau) {
    return {Kind::kAdaptive, 1, upsilon, tau};
  }

  // Throws ConfigError on ℓ = 0 or υ, τ outside [0, 1].
  void validate() const;
};

// Metropolis-Hastings alternative to exact categorical ancestor draws.
struct MhPolicy {
  enum class Kind {
    kOff,                // draw exactly from the (possibly truncated) weights
    kForcedMove,         // uniform forced-move proposal; acceptance uses the truncation policy
    kTruncatedProposal,  // truncated weights as an independent proposal, exact weights in acceptance
  };

  Kind kind = Kind::kOff;
  std::size_t inner_steps = 1;

  void validate(std::size_t num_particles) const;
};

// Replays a path tail x'_{from:T-1} after a prefix summarized by `prefix`, one factor
// f_s(x'_s | ·) g_s(y_s | ·) at a time.
class TailReplay {
 public:
  TailReplay(const Model& model, Summary prefix, const TailView& tail);

  std::size_t level() const { return level_; }
  std::size_t max_level() const { return tail_.end() - tail_.from(); }
  double log_ratio() const { return log_ratio_; }

  // Appends the next factor; returns its log value.
  double extend();

 private:
  const Model* model_;
  TailView tail_;
  std::vector<double> summary_;
  std::vector<double> next_;
  std::size_t level_ = 0;
  double log_ratio_ = 0.0;
};

// log γ_{t-1+ℓ}((prefix, x'_{t:t-1+ℓ})) − log γ_{t-1}(prefix): the truncated ancestor ratio.
// level = T − t gives the untruncated ratio. Throws std::logic_error on NaN.
double nonmarkov_ratio(const Model& model, Summary prefix, const TailView& tail, std::size_t level);

// Ancestor weights log w̃^{ℓ,i} = log w^i_{p} + truncated ratio, for attaching a tail starting
// at p+1 to the particles at time p. Replays are cached, so increasing ℓ is incremental.
// Markov models use log w^i_p + log f(x'_{p+1} | x^i_p) for every level.
class AncestorWeights {
 public:
  AncestorWeights(const Model& model, const ParticleSystem& ps, std::size_t prefix_time, TailView tail);

  std::size_t num_particles() const { return log_w_.size(); }
  std::size_t max_level() const;

  double log_weight(std::size_t i, std::size_t level);
  std::vector<double> log_weights(std::size_t level);

  // Number of f·g factor evaluations so far (the Markov shortcut counts one per particle).
  std::size_t factor_evaluations() const { return evaluations_; }

 private:
  const Model* model_;
  const ParticleSystem* ps_;
  std::size_t prefix_time_;
  TailView tail_;
  std::vector<double> log_w_;
  std::vector<TailReplay> replays_;
  std::vector<bool> started_;
  std::vector<double> markov_cache_;
  std::size_t evaluations_ = 0;
};

struct AdaptiveResult {
  std::size_t level = 1;
  std::vector<double> probabilities;
};

// Increase ℓ from 1 until the moving average of ε_ℓ = TV(P̃_ℓ, P̃_{ℓ-1}) falls below τ or ℓ
// reaches max_level. The average is updated as MA ← υ·MA + (1−υ)·ε_ℓ.
AdaptiveResult adaptive_level(const std::function<std::vector<double>(std::size_t)>& log_weights_at,
                              std::size_t max_level, const TruncationPolicy& policy,
                              std::size_t time_index = 0);

struct MhResult {
  std::size_t index = 0;
  std::size_t accepted = 0;
  std::size_t proposed = 0;
};

// n_inner forced-move MH steps on {0..N-1} targeting P(k) ∝ exp(log_weight(k)), proposing
// uniformly among the indices other than the current one.
MhResult forced_move_mh(std::size_t current, std::size_t num_particles,
                        const std::function<double(std::size_t)>& log_weight, std::size_t inner_steps,
                        Rng& rng);

// n_inner independence-MH steps with proposal q, targeting exp(log_weight).
MhResult independent_mh(std::size_t current, std::span<const double> proposal,
                        const std::function<double(std::size_t)>& log_weight, std::size_t inner_steps,
                        Rng& rng);

// KL(P‖Q) with 0·log 0 = 0; throws std::domain_error when Q(k) = 0 < P(k).
double kl_divergence(std::span<const double> p, std::span<const double> q);
double tv_distance(std::span<const double> p, std::span<const double> q);

struct AncestorDraw {
  std::size_t index = 0;
  std::size_t level = 0;
  std::size_t factor_evaluations = 0;
  std::size_t mh_accepted = 0;
  std::size_t mh_proposed = 0;
};

// Draw the index of the particle at time p that the tail starting at p+1 attaches to.
// `current` seeds the MH chain (the reference slot for PGAS).
AncestorDraw draw_ancestor(const Model& model, const ParticleSystem& ps, std::size_t prefix_time,
                           const TailView& tail, const TruncationPolicy& truncation,
                           const MhPolicy& mh, std::size_t current, Rng& rng);

}  // namespace pgas
