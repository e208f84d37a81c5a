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
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "pgas/cli/config.hpp"
#include "pgas/learning/parameter_model.hpp"

namespace pgas::cli {

// Everything a run needs that follows from the model block: data, true parameters and the
// parameter model factory (parameter models keep adaptation state, so each chain gets its own).
struct Problem {
  std::vector<std::string> names;
  std::vector<double> theta_true;
  std::vector<double> theta0;
  std::function<std::unique_ptr<learning::ParameterModel>()> make_parameter_model;
  Eigen::MatrixXd observations;
  Eigen::MatrixXd true_states;      // when simulated or supplied (may be empty)
  std::vector<double> exact_means;  // exact smoothed means of the first state component, if available
  nlohmann::json notes = nlohmann::json::object();
};

Problem build_problem(const ExperimentConfig& config);

// Data for `pgas-mc simulate`: default parameters, observations and the latent truth.
struct SimulatedDataset {
  Eigen::MatrixXd observations;
  Eigen::MatrixXd states;
};
SimulatedDataset simulate_dataset(const std::string& model, const nlohmann::json& params, std::size_t horizon,
                                  std::uint64_t seed);

struct RunOptions {
  std::size_t chains = 1;
  bool plot = false;
  std::optional<std::filesystem::path> output_dir;
  std::size_t max_threads = 0;  // 0: PGAS_MC_THREADS or hardware concurrency
};

// Runs every (chain, run) pair, writes chain*.csv, diagnostics.csv and summary.json into the
// output directory and returns the summary. Numerical failures propagate as IterationError.
nlohmann::json run_experiment(const ExperimentConfig& config, const RunOptions& options);

std::string git_describe();

// Number of worker threads: min(requested, PGAS_MC_THREADS if set, hardware threads), at least 1.
std::size_t thread_budget(std::size_t requested);

}  // namespace pgas::cli
