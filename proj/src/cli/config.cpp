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
#include "pgas/cli/config.hpp"

#include <fstream>

#include "pgas/errors.hpp"

namespace pgas::cli {

using nlohmann::json;

namespace {

const json* find(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
}

double number(const json& obj, const std::string& key, const std::string& where, double fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v->get<double>();
}

std::size_t count(const json& obj, const std::string& key, const std::string& where, std::size_t fallback,
                  std::size_t minimum = 0) {
  const json* v = find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
  const auto value = v->get<long long>();
  if (value < static_cast<long long>(minimum)) {
    throw ConfigError(where + "." + key + " must be >= " + std::to_string(minimum));
  }
  return static_cast<std::size_t>(value);
}

std::string text(const json& obj, const std::string& key, const std::string& where, const std::string& fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_string()) throw ConfigError(where + "." + key + " must be a string");
  return v->get<std::string>();
}

bool flag(const json& obj, const std::string& key, const std::string& where, bool fallback) {
  const json* v = find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  return v->get<bool>();
}

TruncationPolicy parse_truncation(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j == "full") return TruncationPolicy::full();
    throw ConfigError(where + ": unknown truncation '" + j.get<std::string>() + "'");
  }
  require_object(j, where);
  const std::string kind = text(j, "kind", where, "full");
  TruncationPolicy p;
  if (kind == "full") {
    p = TruncationPolicy::full();
  } else if (kind == "fixed") {
    p = TruncationPolicy::fixed(count(j, "level", where, 1, 1));
  } else if (kind == "adaptive") {
    p = TruncationPolicy::adaptive(number(j, "upsilon", where, 0.1), number(j, "tau", where, 1e-2));
    p.initial_average = number(j, "initial_average", where, 1.0);
  } else {
    throw ConfigError(where + ".kind: unknown truncation kind '" + kind + "'");
  }
  try {
    p.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return p;
}

MhPolicy parse_mh(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j == "off") return {};
    throw ConfigError(where + ": unknown MH policy '" + j.get<std::string>() + "'");
  }
  require_object(j, where);
  const std::string kind = text(j, "kind", where, "off");
  MhPolicy m;
  if (kind == "off") m.kind = MhPolicy::Kind::kOff;
  else if (kind == "forced_move") m.kind = MhPolicy::Kind::kForcedMove;
  else if (kind == "truncated_proposal") m.kind = MhPolicy::Kind::kTruncatedProposal;
  else throw ConfigError(where + ".kind: unknown MH policy '" + kind + "'");
  m.inner_steps = count(j, "inner_steps", where, 1, 1);
  return m;
}

}  // namespace

KernelConfig parse_kernel(const json& j, const std::string& where) {
  require_object(j, where);
  KernelConfig k;
  const json* n = find(j, "N");
  if (n == nullptr) throw ConfigError(where + ".N: missing particle count");
  if (!n->is_number_integer() || n->get<long long>() < 1) throw ConfigError(where + ".N must be an integer >= 1");
  k.num_particles = static_cast<std::size_t>(n->get<long long>());
  try {
    k.flavor = parse_flavor(text(j, "flavor", where, "pgas"));
  } catch (const ConfigError& e) {
    throw ConfigError(where + ".flavor: " + std::string(e.what()).substr(std::string("kernel.flavor: ").size()));
  }
  if (const json* t = find(j, "truncation")) k.truncation = parse_truncation(*t, where + ".truncation");
  if (const json* m = find(j, "mh")) k.mh = parse_mh(*m, where + ".mh");
  try {
    k.mh.validate(k.num_particles);
  } catch (const std::exception& e) {
    throw ConfigError(where + ".mh: " + e.what());
  }
  return k;
}

ExperimentConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  require_object(j, "config");
  ExperimentConfig cfg;
  cfg.raw = j;

  const json* seed = find(j, "seed");
  if (seed == nullptr) throw ConfigError("seed: missing (a fixed seed is required)");
  if (!seed->is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
  cfg.seed = seed->get<std::uint64_t>();

  const json* model = find(j, "model");
  if (model == nullptr) throw ConfigError("model: missing");
  require_object(*model, "model");
  cfg.model.name = text(*model, "name", "model", "");
  if (cfg.model.name != "sv" && cfg.model.name != "lgss" && cfg.model.name != "degenerate" && cfg.model.name != "sir") {
    throw ConfigError("model.name: unknown model '" + cfg.model.name + "' (expected sv, lgss, degenerate or sir)");
  }
  if (const json* p = find(*model, "params")) {
    require_object(*p, "model.params");
    for (const auto& [key, value] : p->items()) {
      if (!value.is_number() && !value.is_string() && !value.is_array()) {
        throw ConfigError("model.params." + key + " has an unsupported type");
      }
    }
    cfg.model.params = *p;
  }
  if (const json* d = find(*model, "data")) {
    require_object(*d, "model.data");
    const std::string path = text(*d, "path", "model.data", "");
    if (!path.empty()) {
      cfg.model.data.path = base_dir / path;
      if (!std::filesystem::exists(cfg.model.data.path)) {
        throw ConfigError("model.data.path: file not found: " + cfg.model.data.path.string());
      }
    }
    const std::string truth = text(*d, "truth", "model.data", "");
    if (!truth.empty()) {
      cfg.model.data.truth_path = base_dir / truth;
      if (!std::filesystem::exists(cfg.model.data.truth_path)) {
        throw ConfigError("model.data.truth: file not found: " + cfg.model.data.truth_path.string());
      }
    }
    cfg.model.data.horizon = count(*d, "T", "model.data", cfg.model.data.horizon, 2);
    if (const json* s = find(*d, "seed")) {
      if (!s->is_number_unsigned()) throw ConfigError("model.data.seed must be a non-negative integer");
      cfg.model.data.seed = s->get<std::uint64_t>();
    }
  }

  const json* kernel = find(j, "kernel");
  if (kernel == nullptr) throw ConfigError("kernel: missing");
  const KernelConfig base = parse_kernel(*kernel, "kernel");
  if (const json* runs = find(j, "runs")) {
    if (!runs->is_array() || runs->empty()) throw ConfigError("runs must be a non-empty array");
    for (std::size_t r = 0; r < runs->size(); ++r) {
      const auto& entry = (*runs)[r];
      const std::string where = "runs[" + std::to_string(r) + "]";
      require_object(entry, where);
      json merged = *kernel;
      if (const json* k = find(entry, "kernel")) merged.merge_patch(*k);
      RunSpec spec{text(entry, "label", where, ""), parse_kernel(merged, where + ".kernel")};
      if (spec.label.empty()) spec.label = to_string(spec.kernel.flavor) + "_N" + std::to_string(spec.kernel.num_particles);
      for (const auto& other : cfg.runs)
        if (other.label == spec.label) throw ConfigError(where + ".label: duplicate label '" + spec.label + "'");
      cfg.runs.push_back(spec);
    }
  } else {
    cfg.runs.push_back({to_string(base.flavor) + "_N" + std::to_string(base.num_particles), base});
  }

  if (const json* d = find(j, "driver")) {
    require_object(*d, "driver");
    cfg.driver.kind = text(*d, "kind", "driver", "gibbs");
    if (cfg.driver.kind != "gibbs" && cfg.driver.kind != "psaem" && cfg.driver.kind != "smoothing") {
      throw ConfigError("driver.kind: unknown driver '" + cfg.driver.kind + "'");
    }
    cfg.driver.iterations = count(*d, "iterations", "driver", cfg.driver.iterations, 1);
    cfg.driver.burn_in = count(*d, "burn_in", "driver", 0);
    cfg.driver.thin = count(*d, "thin", "driver", 1, 1);
    cfg.driver.keep_states = flag(*d, "keep_states", "driver", false);
    cfg.driver.step_exponent = number(*d, "step_exponent", "driver", 0.7);
    if (const json* init = find(*d, "init")) {
      if (!init->is_array()) throw ConfigError("driver.init must be an array of numbers");
      for (const auto& v : *init) {
        if (!v.is_number()) throw ConfigError("driver.init must be an array of numbers");
        cfg.driver.init.push_back(v.get<double>());
      }
    }
  }
  if (cfg.driver.burn_in >= cfg.driver.iterations) throw ConfigError("driver.burn_in must be smaller than driver.iterations");
  if (cfg.driver.kind == "psaem" && !(cfg.driver.step_exponent > 0.5 && cfg.driver.step_exponent <= 1.0)) {
    throw ConfigError("driver.step_exponent must lie in (0.5, 1]");
  }
  if (cfg.driver.kind == "gibbs" && cfg.model.name != "lgss" && cfg.model.name != "sir") {
    throw ConfigError("driver.kind: gibbs needs a parameter posterior (models lgss, sir)");
  }
  if (cfg.driver.kind == "psaem" && cfg.model.name != "lgss") {
    throw ConfigError("driver.kind: psaem is available for model lgss only");
  }

  if (const json* d = find(j, "diagnostics")) {
    require_object(*d, "diagnostics");
    cfg.diagnostics.acf_lags = count(*d, "acf_lags", "diagnostics", cfg.diagnostics.acf_lags);
    cfg.diagnostics.ideal_gibbs = flag(*d, "ideal_gibbs", "diagnostics", false);
    cfg.diagnostics.rmse_every = count(*d, "rmse_every", "diagnostics", cfg.diagnostics.rmse_every, 1);
    if (cfg.diagnostics.ideal_gibbs && (cfg.model.name != "lgss" || cfg.driver.kind != "gibbs")) {
      throw ConfigError("diagnostics.ideal_gibbs: only available for the lgss gibbs driver");
    }
  }
  if (cfg.diagnostics.acf_lags >= cfg.driver.iterations - cfg.driver.burn_in) {
    throw ConfigError("diagnostics.acf_lags must be smaller than the number of kept iterations");
  }

  if (const json* o = find(j, "output")) {
    require_object(*o, "output");
    cfg.output_dir = text(*o, "dir", "output", "out");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(j, path.parent_path());
}

}  // namespace pgas::cli
