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
#include "pgas/ancestor_weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pgas/errors.hpp"
#include "pgas/log_weights.hpp"

namespace pgas {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

void TruncationPolicy::validate() const {
  if (kind == Kind::kFixed && level < 1) throw ConfigError("kernel.truncation.level must be >= 1");
  if (kind == Kind::kAdaptive) {
    if (!(upsilon >= 0.0 && upsilon <= 1.0)) throw ConfigError("kernel.truncation.upsilon must lie in [0, 1]");
    if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("kernel.truncation.tau must lie in [0, 1]");
  }
}

void MhPolicy::validate(std::size_t num_particles) const {
  if (kind == Kind::kOff) return;
  if (inner_steps < 1) throw ConfigError("kernel.mh.inner_steps must be >= 1");
  if (kind == Kind::kForcedMove && num_particles < 2) {
    throw ConfigError("kernel.mh: forced-move proposal needs at least 2 particles");
  }
}

TailReplay::TailReplay(const Model& model, Summary prefix, const TailView& tail)
    : model_(&model),
      tail_(tail),
      summary_(prefix.begin(), prefix.end()),
      next_(prefix.size()) {}

double TailReplay::extend() {
  if (level_ >= max_level()) throw std::out_of_range("TailReplay: tail exhausted");
  const std::size_t s = tail_.from() + level_;
  const State x = tail_.state(s);
  const double factor = model_->log_factor_and_advance(s, summary_, x, next_);
  if (std::isnan(factor)) throw std::logic_error("nonmarkov_ratio: NaN factor at time " + std::to_string(s));
  summary_.swap(next_);
  ++level_;
  log_ratio_ += factor;
  return factor;
}

double nonmarkov_ratio(const Model& model, Summary prefix, const TailView& tail, std::size_t level) {
  TailReplay replay(model, prefix, tail);
  if (level < 1 || level > replay.max_level()) throw std::out_of_range("nonmarkov_ratio: level out of range");
  while (replay.level() < level) replay.extend();
  return replay.log_ratio();
}

AncestorWeights::AncestorWeights(const Model& model, const ParticleSystem& ps, std::size_t prefix_time,
                                 TailView tail)
    : model_(&model),
      ps_(&ps),
      prefix_time_(prefix_time),
      tail_(tail),
      log_w_(ps.log_weights(prefix_time).begin(), ps.log_weights(prefix_time).end()),
      started_(ps.num_particles(), false),
      markov_cache_(ps.num_particles(), std::numeric_limits<double>::quiet_NaN()) {
  if (tail.from() != prefix_time + 1) throw std::invalid_argument("AncestorWeights: tail must start at prefix_time + 1");
  if (tail.from() >= tail.end()) throw std::invalid_argument("AncestorWeights: empty tail");
  replays_.reserve(ps.num_particles());
}

std::size_t AncestorWeights::max_level() const { return tail_.end() - tail_.from(); }

double AncestorWeights::log_weight(std::size_t i, std::size_t level) {
  if (log_w_[i] == kNegInf) return kNegInf;
  if (model_->is_markov()) {
    if (std::isnan(markov_cache_[i])) {
      const std::size_t t = tail_.from();
      markov_cache_[i] = model_->log_transition(t, ps_->summary(prefix_time_, i), tail_.state(t));
      if (std::isnan(markov_cache_[i])) throw std::logic_error("ancestor weight: NaN transition density");
      ++evaluations_;
    }
    return log_w_[i] + markov_cache_[i];
  }
  if (replays_.empty()) {
    // Lazily constructed so that MH paths only pay for the particles they visit.
    for (std::size_t k = 0; k < log_w_.size(); ++k) replays_.emplace_back(*model_, ps_->summary(prefix_time_, k), tail_);
  }
  TailReplay& replay = replays_[i];
  if (replay.level() > level) throw std::logic_error("AncestorWeights: truncation levels must be requested in increasing order");
  while (replay.level() < level && replay.log_ratio() != kNegInf) {
    replay.extend();
    ++evaluations_;
  }
  return log_w_[i] + replay.log_ratio();
}

std::vector<double> AncestorWeights::log_weights(std::size_t level) {
  std::vector<double> lw(log_w_.size());
  for (std::size_t i = 0; i < lw.size(); ++i) lw[i] = log_weight(i, level);
  return lw;
}

AdaptiveResult adaptive_level(const std::function<std::vector<double>(std::size_t)>& log_weights_at,
                              std::size_t max_level, const TruncationPolicy& policy, std::size_t time_index) {
  AdaptiveResult result;
  result.level = 1;
  result.probabilities = normalize_log_weights(log_weights_at(1), time_index);
  double average = policy.initial_average;
  for (std::size_t level = 2; level <= max_level; ++level) {
    auto current = normalize_log_weights(log_weights_at(level), time_index);
    const double eps = tv_distance(current, result.probabilities);
    average = policy.upsilon * average + (1.0 - policy.upsilon) * eps;
    result.level = level;
    result.probabilities = std::move(current);
    if (average < policy.tau) break;
  }
  return result;
}

MhResult forced_move_mh(std::size_t current, std::size_t num_particles,
                        const std::function<double(std::size_t)>& log_weight, std::size_t inner_steps, Rng& rng) {
  if (num_particles < 2) throw ConfigError("forced-move MH needs at least 2 particles");
  MhResult result{current, 0, 0};
  double lw_current = log_weight(current);
  for (std::size_t step = 0; step < inner_steps; ++step) {
    auto u = static_cast<std::size_t>(rng.uniform() * static_cast<double>(num_particles - 1));
    u = std::min(u, num_particles - 2);
    const std::size_t proposal = u < result.index ? u : u + 1;
    const double lw_proposal = log_weight(proposal);
    ++result.proposed;
    bool accept = false;
    if (lw_proposal == kNegInf) {
      accept = false;
    } else if (lw_current == kNegInf || lw_proposal >= lw_current) {
      accept = true;
    } else {
      accept = rng.uniform() < std::exp(lw_proposal - lw_current);
    }
    if (accept) {
      result.index = proposal;
      lw_current = lw_proposal;
      ++result.accepted;
    }
  }
  return result;
}

MhResult independent_mh(std::size_t current, std::span<const double> proposal,
                        const std::function<double(std::size_t)>& log_weight, std::size_t inner_steps, Rng& rng) {
  MhResult result{current, 0, 0};
  double lw_current = log_weight(current);
  for (std::size_t step = 0; step < inner_steps; ++step) {
    const std::size_t candidate = sample_categorical(proposal, rng);
    ++result.proposed;
    if (candidate == result.index) {
      ++result.accepted;
      continue;
    }
    const double lw_candidate = log_weight(candidate);
    const double log_ratio = lw_candidate - lw_current + std::log(proposal[result.index]) - std::log(proposal[candidate]);
    bool accept = false;
    if (lw_candidate == kNegInf) {
      accept = false;
    } else if (lw_current == kNegInf || log_ratio >= 0.0) {
      accept = true;
    } else {
      accept = rng.uniform() < std::exp(log_ratio);
    }
    if (accept) {
      result.index = candidate;
      lw_current = lw_candidate;
      ++result.accepted;
    }
  }
  return result;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double kl = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) throw std::domain_error("kl_divergence: P not absolutely continuous w.r.t. Q");
    kl += p[k] * std::log(p[k] / q[k]);
  }
  return std::max(kl, 0.0);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - q[k]);
  return 0.5 * tv;
}

namespace {

AncestorDraw draw_ancestor_impl(const Model& model, const ParticleSystem& ps, std::size_t prefix_time,
                                const TailView& tail, const TruncationPolicy& truncation, const MhPolicy& mh,
                                std::size_t current, Rng& rng) {
  AncestorWeights weights(model, ps, prefix_time, tail);
  const std::size_t max_level = model.is_markov() ? 1 : weights.max_level();
  const std::size_t time_index = tail.from();

  AncestorDraw draw;
  std::vector<double> probabilities;
  switch (truncation.kind) {
    case TruncationPolicy::Kind::kFull:
      draw.level = max_level;
      break;
    case TruncationPolicy::Kind::kFixed:
      draw.level = std::min(truncation.level, max_level);
      break;
    case TruncationPolicy::Kind::kAdaptive: {
      auto adaptive = adaptive_level([&](std::size_t level) { return weights.log_weights(level); }, max_level,
                                     truncation, time_index);
      draw.level = adaptive.level;
      probabilities = std::move(adaptive.probabilities);
      break;
    }
  }

  const std::size_t level = draw.level;
  auto at_level = [&](std::size_t k) { return weights.log_weight(k, level); };
  switch (mh.kind) {
    case MhPolicy::Kind::kOff: {
      if (probabilities.empty()) probabilities = normalize_log_weights(weights.log_weights(level), time_index);
      draw.index = sample_categorical(probabilities, rng);
      break;
    }
    case MhPolicy::Kind::kForcedMove: {
      const auto result = forced_move_mh(current, ps.num_particles(), at_level, mh.inner_steps, rng);
      draw.index = result.index;
      draw.mh_accepted = result.accepted;
      draw.mh_proposed = result.proposed;
      break;
    }
    case MhPolicy::Kind::kTruncatedProposal: {
      if (probabilities.empty()) probabilities = normalize_log_weights(weights.log_weights(level), time_index);
      auto exact = [&](std::size_t k) { return weights.log_weight(k, max_level); };
      const auto result = independent_mh(current, probabilities, exact, mh.inner_steps, rng);
      draw.index = result.index;
      draw.mh_accepted = result.accepted;
      draw.mh_proposed = result.proposed;
      break;
    }
  }
  draw.factor_evaluations = weights.factor_evaluations();
  return draw;
}

}  // namespace

AncestorDraw draw_ancestor(const Model& model, const ParticleSystem& ps, std::size_t prefix_time,
                           const TailView& tail, const TruncationPolicy& truncation, const MhPolicy& mh,
                           std::size_t current, Rng& rng) {
  try {
    return draw_ancestor_impl(model, ps, prefix_time, tail, truncation, mh, current, rng);
  } catch (const DegenerateWeights&) {
    throw DegenerateWeights(tail.from(), "reference tail unreachable: all ancestor weights are zero");
  }
}

}  // namespace pgas
