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
#include <stdexcept>
#include <string>

namespace pgas {

// Runtime numerical failure that can be attributed to a time index of a sweep.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t time_index)
      : std::runtime_error(what + " (time index " + std::to_string(time_index) + ")"),
        time_index_(time_index) {}

  std::size_t time_index() const { return time_index_; }

 private:
  std::size_t time_index_;
};

// All log-weights at some time are -inf.
class DegenerateWeights : public NumericalError {
 public:
  explicit DegenerateWeights(std::size_t time_index, const std::string& what = "degenerate weights")
      : NumericalError(what, time_index) {}
};

// Failure inside an outer driver, tagged with the 1-based iteration it occurred in.
class IterationError : public std::runtime_error {
 public:
  IterationError(std::size_t iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what), iteration_(iteration) {}

  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

// Invalid configuration of a kernel, driver or experiment. The message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pgas
