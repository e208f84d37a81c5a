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
#include "pgas/oracles/discrete_toy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pgas/log_weights.hpp"

namespace pgas::oracles {

namespace {

void check_row(const std::vector<double>& row, std::size_t n, const char* what) {
  if (row.size() != n) throw std::invalid_argument(std::string("toy model: wrong size of ") + what);
  double sum = 0.0;
  for (double p : row) {
    if (!(p >= 0.0)) throw std::invalid_argument(std::string("toy model: negative entry in ") + what);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument(std::string("toy model: row of ") + what + " does not sum to 1");
}

std::vector<double> random_row(std::size_t n, Rng& rng) {
  std::vector<double> row(n);
  double sum = 0.0;
  for (double& p : row) {
    p = 0.2 + rng.uniform();
    sum += p;
  }
  for (double& p : row) p /= sum;
  return row;
}

double safe_log(double p) { return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(); }

std::size_t as_index(double x) { return static_cast<std::size_t>(std::lround(x)); }

}  // namespace

void DiscreteToyModel::validate() const {
  if (num_states < 1 || horizon < 1) throw std::invalid_argument("toy model: empty state space or horizon");
  check_row(initial, num_states, "initial");
  check_row(initial_proposal, num_states, "initial_proposal");
  if (transition.size() != num_states || proposal.size() != num_states) {
    throw std::invalid_argument("toy model: transition/proposal must have |X| rows");
  }
  for (const auto& row : transition) check_row(row, num_states, "transition");
  for (const auto& row : proposal) check_row(row, num_states, "proposal");
  if (emission.size() != horizon) throw std::invalid_argument("toy model: emission must have T rows");
  for (const auto& row : emission) {
    if (row.size() != num_states) throw std::invalid_argument("toy model: emission row has wrong size");
  }
}

bool DiscreteToyModel::is_bootstrap() const { return initial_proposal == initial && proposal == transition; }

std::size_t DiscreteToyModel::num_paths() const {
  std::size_t n = 1;
  for (std::size_t t = 0; t < horizon; ++t) n *= num_states;
  return n;
}

std::vector<std::size_t> DiscreteToyModel::decode(std::size_t index) const {
  std::vector<std::size_t> path(horizon);
  for (std::size_t t = 0; t < horizon; ++t) {
    path[t] = index % num_states;
    index /= num_states;
  }
  return path;
}

std::size_t DiscreteToyModel::encode(const std::vector<std::size_t>& path) const {
  std::size_t index = 0;
  for (std::size_t t = horizon; t-- > 0;) index = index * num_states + path[t];
  return index;
}

double DiscreteToyModel::gamma(const std::vector<std::size_t>& path) const {
  double g = initial[path[0]] * emission[0][path[0]];
  for (std::size_t t = 1; t < path.size(); ++t) g *= transition[path[t - 1]][path[t]] * emission[t][path[t]];
  return g;
}

std::vector<double> DiscreteToyModel::posterior() const {
  std::vector<double> post(num_paths());
  double z = 0.0;
  for (std::size_t k = 0; k < post.size(); ++k) {
    post[k] = gamma(decode(k));
    z += post[k];
  }
  for (double& p : post) p /= z;
  return post;
}

DiscreteToyModel example_toy(bool perturbed_proposal) {
  DiscreteToyModel toy;
  toy.num_states = 2;
  toy.horizon = 2;
  toy.initial = {0.6, 0.4};
  toy.transition = {{0.7, 0.3}, {0.2, 0.8}};
  toy.emission = {{0.9, 0.3}, {0.25, 0.65}};
  if (perturbed_proposal) {
    toy.initial_proposal = {0.5, 0.5};
    toy.proposal = {{0.4, 0.6}, {0.55, 0.45}};
  } else {
    toy.initial_proposal = toy.initial;
    toy.proposal = toy.transition;
  }
  toy.validate();
  return toy;
}

DiscreteToyModel random_toy(std::size_t num_states, std::size_t horizon, bool bootstrap, Rng& rng) {
  DiscreteToyModel toy;
  toy.num_states = num_states;
  toy.horizon = horizon;
  toy.initial = random_row(num_states, rng);
  for (std::size_t x = 0; x < num_states; ++x) toy.transition.push_back(random_row(num_states, rng));
  for (std::size_t t = 0; t < horizon; ++t) {
    std::vector<double> row(num_states);
    for (double& e : row) e = 0.05 + rng.uniform();
    toy.emission.push_back(row);
  }
  if (bootstrap) {
    toy.initial_proposal = toy.initial;
    toy.proposal = toy.transition;
  } else {
    toy.initial_proposal = random_row(num_states, rng);
    for (std::size_t x = 0; x < num_states; ++x) toy.proposal.push_back(random_row(num_states, rng));
  }
  toy.validate();
  return toy;
}

DiscreteToyAdapter::DiscreteToyAdapter(DiscreteToyModel toy) : toy_(std::move(toy)) {
  toy_.validate();
  bootstrap_ = toy_.is_bootstrap();
}

double DiscreteToyAdapter::log_transition(std::size_t t, Summary prev, State x) const {
  const std::size_t to = as_index(x[0]);
  return t == 0 ? safe_log(toy_.initial[to]) : safe_log(toy_.transition[as_index(prev[0])][to]);
}

double DiscreteToyAdapter::log_observation(std::size_t t, Summary, State x) const {
  return safe_log(toy_.emission[t][as_index(x[0])]);
}

void DiscreteToyAdapter::sample_transition(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const {
  const auto& row = t == 0 ? toy_.initial : toy_.transition[as_index(prev[0])];
  out[0] = static_cast<double>(sample_categorical(row, rng));
}

void DiscreteToyAdapter::sample_proposal(std::size_t t, Summary prev, std::span<double> out, Rng& rng) const {
  const auto& row = t == 0 ? toy_.initial_proposal : toy_.proposal[as_index(prev[0])];
  out[0] = static_cast<double>(sample_categorical(row, rng));
}

double DiscreteToyAdapter::log_proposal(std::size_t t, Summary prev, State x) const {
  const std::size_t to = as_index(x[0]);
  return t == 0 ? safe_log(toy_.initial_proposal[to]) : safe_log(toy_.proposal[as_index(prev[0])][to]);
}

Trajectory DiscreteToyAdapter::path(std::size_t index) const {
  const auto states = toy_.decode(index);
  Trajectory out(toy_.horizon, 1);
  for (std::size_t t = 0; t < states.size(); ++t) out.state(t)[0] = static_cast<double>(states[t]);
  return out;
}

std::size_t DiscreteToyAdapter::index_of(const Trajectory& path) const {
  std::vector<std::size_t> states(path.length());
  for (std::size_t t = 0; t < states.size(); ++t) states[t] = as_index(path[t]);
  return toy_.encode(states);
}

}  // namespace pgas::oracles
