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
#include "pgas/cli/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "pgas/cli/io.hpp"
#include "pgas/cli/svg.hpp"
#include "pgas/diagnostics.hpp"
#include "pgas/errors.hpp"
#include "pgas/learning/gibbs.hpp"
#include "pgas/learning/lgss.hpp"
#include "pgas/learning/saem.hpp"
#include "pgas/learning/sir.hpp"
#include "pgas/models/degenerate_lgss.hpp"
#include "pgas/models/lgss.hpp"
#include "pgas/models/sir.hpp"
#include "pgas/models/stochastic_volatility.hpp"
#include "pgas/oracles/ideal_gibbs.hpp"
#include "pgas/oracles/kalman.hpp"

#ifndef PGAS_GIT_DESCRIBE
#define PGAS_GIT_DESCRIBE "unknown"
#endif

namespace pgas::cli {

using nlohmann::json;

std::string git_describe() { return PGAS_GIT_DESCRIBE; }

std::size_t thread_budget(std::size_t requested) {
  std::size_t budget = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PGAS_MC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) budget = std::min(budget, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
    }
  }
  if (requested > 0) budget = std::min(budget, requested);
  return std::max<std::size_t>(1, budget);
}

namespace {

double param(const json& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!it->is_number()) throw ConfigError("model.params." + key + " must be a number");
  return it->get<double>();
}

std::size_t param_count(const json& params, const std::string& key, std::size_t fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!it->is_number_integer() || it->get<long long>() < 1) throw ConfigError("model.params." + key + " must be a positive integer");
  return static_cast<std::size_t>(it->get<long long>());
}

template <typename F>
auto checked(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

models::LgssParams lgss_params(const json& p) {
  models::LgssParams out{param(p, "a", 0.8), param(p, "q", 1.0), param(p, "r", 0.5)};
  checked("model.params", [&] { out.validate(); return 0; });
  return out;
}

models::SvParams sv_params(const json& p) {
  models::SvParams out{param(p, "a", 0.9), param(p, "sigma", 0.5)};
  if (!(out.sigma > 0.0) || !(std::abs(out.a) < 1.0)) throw ConfigError("model.params: sv needs |a| < 1 and sigma > 0");
  return out;
}

models::SirParams sir_params(const json& p) {
  models::SirParams out;
  out.population = param(p, "population", out.population);
  out.mu = param(p, "mu", out.mu);
  out.gamma = param(p, "gamma", out.gamma);
  out.r0 = param(p, "r0", out.r0);
  out.alpha = param(p, "alpha", out.alpha);
  out.noise = param(p, "noise", out.noise);
  out.rho = param(p, "rho", out.rho);
  out.sigma = param(p, "sigma", out.sigma);
  out.substeps = param_count(p, "substeps", out.substeps);
  if (const auto it = p.find("initial_fraction"); it != p.end()) {
    if (!it->is_array() || it->size() != 3) throw ConfigError("model.params.initial_fraction must be an array of 3 numbers");
    for (std::size_t k = 0; k < 3; ++k) out.initial_fraction[k] = (*it)[k].get<double>();
  }
  checked("model.params", [&] { out.validate(); return 0; });
  return out;
}

models::DegenerateSystem degenerate_system(const json& p) {
  const auto it = p.find("system");
  const std::string kind = it == p.end() ? "fourth_order" : it->get<std::string>();
  if (kind == "fourth_order") return models::fourth_order_example();
  if (kind == "random") {
    Rng rng(static_cast<std::uint64_t>(param(p, "system_seed", 1.0)));
    return checked("model.params", [&] {
      return models::random_stable_system(param_count(p, "order", 5), param_count(p, "outputs", 1), rng);
    });
  }
  throw ConfigError("model.params.system: unknown system '" + kind + "' (expected fourth_order or random)");
}

Eigen::MatrixXd column_matrix(const std::vector<double>& v) { return oracles::column(v); }

std::vector<double> first_column(const Eigen::MatrixXd& m) {
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = m(static_cast<Eigen::Index>(t), 0);
  return out;
}

std::vector<double> first_components(const std::vector<Eigen::VectorXd>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x(0));
  return out;
}

}  // namespace

SimulatedDataset simulate_dataset(const std::string& model, const json& params, std::size_t horizon,
                                  std::uint64_t seed) {
  Rng rng(seed);
  SimulatedDataset out;
  if (model == "lgss") {
    const auto d = models::simulate_lgss(lgss_params(params), horizon, rng);
    out.observations = column_matrix(d.y);
    out.states = column_matrix(d.x);
  } else if (model == "sv") {
    const auto d = models::simulate_sv(sv_params(params), horizon, rng);
    out.observations = column_matrix(d.y);
    out.states = column_matrix(d.x);
  } else if (model == "degenerate") {
    const auto d = models::simulate_degenerate(degenerate_system(params), horizon, rng);
    out.observations = d.y;
    out.states = d.state;
  } else if (model == "sir") {
    const auto p = sir_params(params);
    const auto d = models::simulate_sir(p, horizon, rng);
    out.observations = column_matrix(d.y);
    out.states.resize(static_cast<Eigen::Index>(horizon), 4);
    for (std::size_t k = 0; k < horizon; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      out.states(kk, 0) = d.week_end[k].s;
      out.states(kk, 1) = d.week_end[k].i;
      out.states(kk, 2) = d.week_end[k].r;
      out.states(kk, 3) = d.mean_infected[k];
    }
  } else {
    throw ConfigError("model.name: unknown model '" + model + "'");
  }
  return out;
}

Problem build_problem(const ExperimentConfig& cfg) {
  Problem pr;
  const json& p = cfg.model.params;
  const std::string& name = cfg.model.name;
  const bool learn = cfg.driver.kind != "smoothing";

  if (!cfg.model.data.path.empty()) {
    const auto ts = read_time_series(cfg.model.data.path);
    pr.observations = ts.values;
    if (!cfg.model.data.truth_path.empty()) pr.true_states = read_time_series(cfg.model.data.truth_path).values;
    pr.notes["data"] = cfg.model.data.path.string();
  } else {
    const std::uint64_t seed = cfg.model.data.seed.value_or(splitmix64(cfg.seed ^ 0xda7aULL));
    const auto d = simulate_dataset(name, p, cfg.model.data.horizon, seed);
    pr.observations = d.observations;
    pr.true_states = d.states;
    pr.notes["data"] = "simulated";
    pr.notes["data_seed"] = seed;
  }
  if (pr.observations.rows() < 2) throw ConfigError("model.data: need at least two observations");
  const std::vector<double> y = first_column(pr.observations);

  if (name == "lgss") {
    const auto theta = lgss_params(p);
    pr.names = {"a", "q", "r"};
    pr.theta_true = {theta.a, theta.q, theta.r};
    pr.theta0 = learn ? std::vector<double>{-0.8, 0.5, 1.0} : pr.theta_true;
    pr.exact_means = oracles::lgss_smoother(theta, y).mean;
    if (learn) {
      pr.make_parameter_model = [y] { return std::make_unique<learning::LgssParameterModel>(y); };
      pr.notes["prior"] = learning::LgssParameterModel(y).prior_description();
    } else {
      auto model = std::make_shared<models::Lgss>(theta, y);
      pr.make_parameter_model = [model, pr] {
        return std::make_unique<learning::FixedParameters>(model, pr.theta_true, pr.names);
      };
    }
  } else if (name == "sv") {
    const auto theta = sv_params(p);
    pr.names = {"a", "sigma"};
    pr.theta_true = {theta.a, theta.sigma};
    pr.theta0 = pr.theta_true;
    auto model = std::make_shared<models::StochasticVolatility>(theta, y);
    pr.make_parameter_model = [model, pr] {
      return std::make_unique<learning::FixedParameters>(model, pr.theta_true, pr.names);
    };
  } else if (name == "degenerate") {
    const auto sys = degenerate_system(p);
    if (static_cast<std::size_t>(pr.observations.cols()) != sys.outputs()) {
      throw ConfigError("model.data: observation columns do not match the system outputs");
    }
    pr.exact_means = first_components(oracles::mbf_smoother(oracles::as_linear_system(sys), pr.observations).mean);
    pr.notes["initial_condition"] = "x_1 ~ N(0, Q), z_1 = 0";
    pr.notes["spectral_radius"] = sys.spectral_radius();
    auto model = std::make_shared<models::CollapsedDegenerateModel>(sys, pr.observations);
    pr.make_parameter_model = [model] {
      return std::make_unique<learning::FixedParameters>(model, std::vector<double>{}, std::vector<std::string>{});
    };
  } else if (name == "sir") {
    const auto base = sir_params(p);
    pr.names = {"gamma", "r0", "alpha", "noise", "rho", "sigma"};
    pr.theta_true = {base.gamma, base.r0, base.alpha, base.noise, base.rho, base.sigma};
    pr.theta0 = pr.theta_true;
    pr.notes["initial_condition"] = json::array({base.initial_fraction[0], base.initial_fraction[1], base.initial_fraction[2]});
    if (learn) {
      pr.make_parameter_model = [base, y] { return std::make_unique<learning::SirParameterModel>(base, y); };
      pr.notes["prior"] = learning::SirParameterModel(base, y).prior_description();
    } else {
      auto model = std::make_shared<models::SirCollapsedModel>(base, y);
      pr.make_parameter_model = [model, pr] {
        return std::make_unique<learning::FixedParameters>(model, pr.theta_true, pr.names);
      };
    }
  }
  if (!cfg.driver.init.empty()) {
    if (cfg.driver.init.size() != pr.names.size()) {
      throw ConfigError("driver.init must have " + std::to_string(pr.names.size()) + " entries");
    }
    pr.theta0 = cfg.driver.init;
  }
  return pr;
}

namespace {

struct Task {
  std::size_t chain = 0;
  std::size_t run = 0;
  std::string suffix;
};

struct TaskOutput {
  json summary;
  std::vector<std::string> diagnostics;  // CSV rows without the trailing newline
  std::vector<std::vector<double>> theta;
};

std::vector<std::string> echo_lines(const ExperimentConfig& cfg, std::uint64_t seed) {
  return {"config: " + cfg.raw.dump(), "seed: " + std::to_string(seed), "git: " + git_describe()};
}

json posterior_summary(const std::vector<std::string>& names, const std::vector<std::vector<double>>& theta,
                       std::size_t from) {
  json out = json::object();
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::vector<double> v;
    for (std::size_t n = from; n < theta.size(); ++n) v.push_back(theta[n][j]);
    if (v.empty()) continue;
    json s;
    s["mean"] = mean(v);
    s["sd"] = v.size() > 1 ? std::sqrt(variance(v)) : 0.0;
    s["q05"] = quantile(v, 0.05);
    s["q95"] = quantile(v, 0.95);
    out[names[j]] = s;
  }
  return out;
}

std::string diag_row(std::size_t chain, const std::string& run, const std::string& metric, const std::string& index,
                     double value) {
  return std::to_string(chain) + "," + run + "," + metric + "," + index + "," + format_number(value);
}

TaskOutput run_task(const ExperimentConfig& cfg, const Problem& pr, const Task& task,
                    const std::filesystem::path& out_dir, bool plot) {
  const RunSpec& spec = cfg.runs[task.run];
  const std::uint64_t seed = Rng(cfg.seed).split(1 + task.chain * 4096 + task.run).seed();
  Rng rng(seed);
  auto params = pr.make_parameter_model();
  const std::size_t horizon = static_cast<std::size_t>(pr.observations.rows());

  const auto chain_path = out_dir / ("chain" + task.suffix + ".csv");
  std::ofstream csv(chain_path);
  if (!csv) throw std::runtime_error("cannot write " + chain_path.string());
  for (const auto& line : echo_lines(cfg, seed)) csv << "# " << line << '\n';
  csv << "iteration";
  for (const auto& n : pr.names) csv << ',' << n;
  if (cfg.driver.keep_states)
    for (std::size_t t = 0; t < horizon; ++t) csv << ",x" << t + 1;
  csv << '\n';

  TaskOutput out;
  const std::size_t burn_in = cfg.driver.kind == "psaem" ? 0 : cfg.driver.burn_in;
  std::optional<RunningRmse> rmse;
  if (cfg.driver.kind == "smoothing" && !pr.exact_means.empty()) rmse.emplace(pr.exact_means);
  std::vector<std::string> rmse_rows;

  auto sink = [&](const learning::IterationRecord& r) {
    if (r.iteration <= burn_in) return;
    if (rmse) {
      const double e = rmse->add(learning::first_component(*r.trajectory));
      if (rmse->count() % cfg.diagnostics.rmse_every == 0)
        rmse_rows.push_back(diag_row(task.chain, spec.label, "running_rmse", std::to_string(r.iteration), e));
    }
    if ((r.iteration - burn_in) % cfg.driver.thin != 0) return;
    csv << r.iteration;
    for (double v : *r.theta) csv << ',' << format_number(v);
    if (cfg.driver.keep_states)
      for (std::size_t t = 0; t < horizon; ++t) csv << ',' << format_number((*r.trajectory)[t]);
    csv << '\n';
  };

  const auto start = std::chrono::steady_clock::now();
  json s;
  s["chain"] = task.chain;
  s["run"] = spec.label;
  s["flavor"] = to_string(spec.kernel.flavor);
  s["N"] = spec.kernel.num_particles;
  s["seed"] = seed;
  if (cfg.driver.kind == "psaem") {
    learning::SaemConfig sc{cfg.driver.iterations, cfg.driver.step_exponent, spec.kernel};
    const auto trace = learning::psaem_run(*params, sc, pr.theta0, rng, sink);
    out.theta = trace.theta;
    json fin = json::object();
    for (std::size_t j = 0; j < pr.names.size(); ++j) fin[pr.names[j]] = trace.theta.back()[j];
    s["final_theta"] = fin;
  } else {
    learning::GibbsConfig gc{cfg.driver.iterations, cfg.driver.burn_in, spec.kernel, false};
    const auto rec = learning::gibbs_run(*params, gc, pr.theta0, Trajectory(), rng, sink);
    out.theta = rec.theta;
    s["posterior"] = posterior_summary(pr.names, rec.theta, rec.burn_in);
    double rate_sum = 0.0;
    double level_sum = 0.0;
    std::size_t level_count = 0;
    for (std::size_t t = 0; t < horizon; ++t) {
      const double rate = rec.update_rate(t);
      rate_sum += rate;
      const auto idx = std::to_string(t + 1);
      out.diagnostics.push_back(diag_row(task.chain, spec.label, "update_rate", idx, rate));
      out.diagnostics.push_back(diag_row(task.chain, spec.label, "ancestor_switch_rate", idx,
                                         static_cast<double>(rec.ancestor_switches[t]) / static_cast<double>(rec.iterations())));
      if (t > 0 && spec.kernel.flavor != Flavor::kPG) {
        const double lvl = static_cast<double>(rec.truncation_level_sum[t]) / static_cast<double>(rec.iterations());
        out.diagnostics.push_back(diag_row(task.chain, spec.label, "mean_truncation_level", idx, lvl));
        level_sum += lvl;
        ++level_count;
      }
    }
    s["update_rate"] = {{"mean", rate_sum / static_cast<double>(horizon)}, {"t1", rec.update_rate(0)}};
    if (level_count > 0) s["mean_truncation_level"] = level_sum / static_cast<double>(level_count);
    s["factor_evaluations"] = rec.factor_evaluations;
    if (rec.mh_proposed > 0) {
      const double acc = static_cast<double>(rec.mh_accepted) / static_cast<double>(rec.mh_proposed);
      s["ancestor_mh_acceptance"] = acc;
      out.diagnostics.push_back(diag_row(task.chain, spec.label, "ancestor_mh_acceptance", "", acc));
    }
  }
  for (const auto& [key, value] : params->statistics()) {
    s["parameter_model"][key] = value;
    out.diagnostics.push_back(diag_row(task.chain, spec.label, key, "", value));
  }
  if (rmse && rmse->count() > 0) {
    s["rmse"] = rmse->value();
    out.diagnostics.insert(out.diagnostics.end(), rmse_rows.begin(), rmse_rows.end());
  }
  s["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.summary = s;

  if (plot && !pr.names.empty()) {
    std::vector<Panel> panels;
    for (std::size_t j = 0; j < pr.names.size(); ++j) {
      Series series{spec.label, {}};
      for (const auto& th : out.theta) series.values.push_back(th[j]);
      panels.push_back({"trace of " + pr.names[j], {series}});
    }
    write_svg(out_dir / ("trace" + task.suffix + ".svg"), panels);
  }
  return out;
}

}  // namespace

json run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  if (options.chains < 1) throw ConfigError("--chains must be >= 1");
  const Problem pr = build_problem(cfg);
  const std::filesystem::path out_dir = options.output_dir.value_or(cfg.output_dir);
  std::filesystem::create_directories(out_dir);

  std::vector<Task> tasks;
  for (std::size_t c = 0; c < options.chains; ++c) {
    for (std::size_t r = 0; r < cfg.runs.size(); ++r) {
      std::string suffix;
      if (cfg.runs.size() > 1) suffix += "_" + cfg.runs[r].label;
      if (options.chains > 1) suffix += "_chain" + std::to_string(c + 1);
      tasks.push_back({c, r, suffix});
    }
  }

  std::vector<TaskOutput> outputs(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        outputs[k] = run_task(cfg, pr, tasks[k], out_dir, options.plot);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(thread_budget(options.max_threads), tasks.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  json summary;
  summary["config"] = cfg.raw;
  summary["seed"] = cfg.seed;
  summary["git_describe"] = git_describe();
  summary["driver"] = cfg.driver.kind;
  summary["model"] = cfg.model.name;
  summary["notes"] = pr.notes;
  summary["true_theta"] = json::object();
  for (std::size_t j = 0; j < pr.names.size(); ++j) summary["true_theta"][pr.names[j]] = pr.theta_true[j];

  // ACF table, centered at the ideal Gibbs posterior mean when available.
  const std::size_t lags = cfg.diagnostics.acf_lags;
  std::vector<double> center;
  json acf_table = json::object();
  acf_table["lags"] = lags;
  if (cfg.diagnostics.ideal_gibbs) {
    Rng rng(Rng(cfg.seed).split(0x1dea1).seed());
    const auto th = pr.theta0;
    const auto ideal = oracles::ideal_gibbs_lgss(first_column(pr.observations), {}, cfg.driver.iterations,
                                                 cfg.driver.burn_in, {th[0], th[1], th[2]}, rng);
    summary["ideal_gibbs"]["posterior"] = posterior_summary(pr.names, ideal.theta, ideal.burn_in);
    for (std::size_t j = 0; j < pr.names.size(); ++j) {
      const auto v = ideal.parameter(j);
      center.push_back(mean(v));
      acf_table[pr.names[j]]["ideal"] = acf(v, lags, center.back());
    }
    acf_table["center"] = "ideal_gibbs_mean";
  } else {
    acf_table["center"] = "chain_mean";
  }
  if (cfg.driver.kind == "gibbs") {
    for (std::size_t k = 0; k < tasks.size(); ++k) {
      const auto label = cfg.runs[tasks[k].run].label + (options.chains > 1 ? "_chain" + std::to_string(tasks[k].chain + 1) : "");
      for (std::size_t j = 0; j < pr.names.size(); ++j) {
        std::vector<double> v;
        for (std::size_t n = cfg.driver.burn_in; n < outputs[k].theta.size(); ++n) v.push_back(outputs[k].theta[n][j]);
        try {
          acf_table[pr.names[j]][label] = center.empty() ? acf(v, lags) : acf(v, lags, center[j]);
        } catch (const std::invalid_argument&) {
          acf_table[pr.names[j]][label] = nullptr;  // constant chain
        }
      }
    }
    summary["acf_table"] = acf_table;
  }
  if (cfg.driver.kind == "psaem" && cfg.model.name == "lgss") {
    const auto y = first_column(pr.observations);
    const auto em = learning::lgss_em(y, {pr.theta_true[0], pr.theta_true[1], pr.theta_true[2]});
    const auto se = learning::lgss_standard_errors(em.params, y);
    summary["reference"] = {{"em", {{"a", em.params.a}, {"q", em.params.q}, {"r", em.params.r}}},
                            {"standard_errors", {{"a", se[0]}, {"q", se[1]}, {"r", se[2]}}},
                            {"em_iterations", em.iterations}};
  }
  summary["runs"] = json::array();
  for (const auto& o : outputs) summary["runs"].push_back(o.summary);

  {
    std::ofstream diag(out_dir / "diagnostics.csv");
    for (const auto& line : echo_lines(cfg, cfg.seed)) diag << "# " << line << '\n';
    diag << "chain,run,metric,index,value\n";
    for (const auto& o : outputs)
      for (const auto& row : o.diagnostics) diag << row << '\n';
  }
  {
    std::ofstream js(out_dir / "summary.json");
    js << summary.dump(2) << '\n';
  }
  if (options.plot && summary.contains("acf_table")) {
    std::vector<Panel> panels;
    for (const auto& n : pr.names) {
      Panel panel{"ACF of " + n, {}};
      for (const auto& [label, values] : acf_table[n].items()) {
        if (values.is_null()) continue;
        panel.series.push_back({label, values.get<std::vector<double>>()});
      }
      panels.push_back(panel);
    }
    write_svg(out_dir / "acf.svg", panels);
  }
  return summary;
}

}  // namespace pgas::cli
