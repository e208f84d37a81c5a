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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgas/kernel.hpp"

namespace pgas::cli {

struct DataSpec {
  std::filesystem::path path;        // CSV `t,y1,...`; empty to simulate
  std::filesystem::path truth_path;  // optional `t,x...` file
  std::size_t horizon = 100;         // simulated length (weeks for SIR)
  std::optional<std::uint64_t> seed; // simulation seed; derived from the top-level seed if absent
};

struct ModelSpec {
  std::string name;  // sv | lgss | degenerate | sir
  nlohmann::json params = nlohmann::json::object();
  DataSpec data;
};

struct RunSpec {
  std::string label;
  KernelConfig kernel;
};

struct DriverSpec {
  std::string kind = "gibbs";  // gibbs | psaem | smoothing
  std::size_t iterations = 1000;
  std::size_t burn_in = 0;
  std::size_t thin = 1;
  bool keep_states = false;
  std::vector<double> init;  // θ[0]; model default if empty
  double step_exponent = 0.7;
};

struct DiagnosticsSpec {
  std::size_t acf_lags = 20;
  bool ideal_gibbs = false;
  std::size_t rmse_every = 100;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  ModelSpec model;
  std::vector<RunSpec> runs;
  DriverSpec driver;
  DiagnosticsSpec diagnostics;
  std::filesystem::path output_dir = "out";
  nlohmann::json raw;
};

// Schema and semantic checks. Throws ConfigError whose message starts with the offending
// field (e.g. "kernel.N", "seed"). Relative paths are resolved against base_dir.
ExperimentConfig parse_config(const nlohmann::json& json, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

KernelConfig parse_kernel(const nlohmann::json& json, const std::string& where);

}  // namespace pgas::cli
