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
#include <vector>

#include "pgas/kernel.hpp"
#include "pgas/oracles/discrete_toy.hpp"

namespace pgas::oracles {

// Row-stochastic matrix over X^T; entry (r, c) is the probability that the kernel maps
// reference path r to output path c (paths indexed by DiscreteToyModel::encode).
class ExactKernel {
 public:
  explicit ExactKernel(std::size_t dim) : dim_(dim), p_(dim * dim, 0.0) {}

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t r, std::size_t c) const { return p_[r * dim_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return p_[r * dim_ + c]; }

  double max_row_sum_error() const;
  // ‖πᵀK − πᵀ‖∞.
  double invariance_residual(const std::vector<double>& pi) const;
  ExactKernel multiply(const ExactKernel& other) const;
  double max_abs_difference(const ExactKernel& other) const;

 private:
  std::size_t dim_;
  std::vector<double> p_;
};

// Size guard: |X|^T · (N·|X|·N)^T outcomes at most.
inline constexpr double kMaxEnumerationAtoms = 1e7;

// Exact kernel of PG, PGAS or PGBS with N particles on a toy model, obtained by summing over
// every particle, ancestor and output-index outcome of the conditional sweep with its exact
// probability. Ancestor and backward weights are evaluated from complete-path target ratios.
// Throws std::length_error past the size guard.
ExactKernel enumerate_kernel(const DiscreteToyModel& toy, Flavor flavor, std::size_t num_particles);

// max over starting paths of TV(K(x, ·), π).
double max_tv_to(const ExactKernel& kernel, const std::vector<double>& pi);

}  // namespace pgas::oracles
