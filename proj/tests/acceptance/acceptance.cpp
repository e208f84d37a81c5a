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
// Acceptance runner: one PASS/FAIL line per criterion. Pass criterion numbers as arguments to
// run a subset.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pgas/diagnostics.hpp"
#include "pgas/kernel.hpp"
#include "pgas/learning/gibbs.hpp"
#include "pgas/learning/lgss.hpp"
#include "pgas/learning/saem.hpp"
#include "pgas/learning/sir.hpp"
#include "pgas/models/degenerate_lgss.hpp"
#include "pgas/models/lgss.hpp"
#include "pgas/models/sir.hpp"
#include "pgas/models/stochastic_volatility.hpp"
#include "pgas/oracles/discrete_toy.hpp"
#include "pgas/oracles/enumeration.hpp"
#include "pgas/oracles/geometric_decay.hpp"
#include "pgas/oracles/ideal_gibbs.hpp"
#include "pgas/oracles/kalman.hpp"

namespace fs = std::filesystem;
using namespace pgas;

namespace {

constexpr std::uint64_t kMasterSeed = 20130701;

Rng stream(std::uint64_t criterion) { return Rng(kMasterSeed).split(criterion); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

KernelConfig kernel(std::size_t n, Flavor flavor, TruncationPolicy truncation = TruncationPolicy::full()) {
  KernelConfig k;
  k.num_particles = n;
  k.flavor = flavor;
  k.truncation = truncation;
  return k;
}

std::vector<double> first_components(const std::vector<Eigen::VectorXd>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x(0));
  return out;
}

// Final running RMSE of the post-burn-in running mean against exact means, for a fixed-θ chain.
double smoothing_rmse(const std::shared_ptr<const Model>& model, const std::vector<double>& exact,
                      const KernelConfig& k, std::size_t iterations, std::size_t burn_in, Rng& rng,
                      double* mean_level = nullptr) {
  learning::FixedParameters fixed(model, {}, {});
  learning::GibbsConfig cfg;
  cfg.iterations = iterations;
  cfg.burn_in = burn_in;
  cfg.kernel = k;
  RunningRmse rmse(exact);
  std::vector<double> x(exact.size());
  const auto rec = learning::gibbs_run(fixed, cfg, {}, {}, rng, [&](const learning::IterationRecord& r) {
    if (r.iteration <= burn_in) return;
    for (std::size_t t = 0; t < x.size(); ++t) x[t] = (*r.trajectory)[t];
    rmse.add(x);
  });
  if (mean_level != nullptr) {
    double sum = 0.0;
    for (std::size_t t = 1; t < rec.truncation_level_sum.size(); ++t) sum += static_cast<double>(rec.truncation_level_sum[t]);
    *mean_level = sum / static_cast<double>(rec.iterations() * (rec.truncation_level_sum.size() - 1));
  }
  return rmse.value();
}

Verdict exact_invariance() {
  const auto toy = oracles::example_toy();
  const auto pi = toy.posterior();
  double worst = 0.0;
  for (Flavor f : {Flavor::kPG, Flavor::kPGAS, Flavor::kPGBS}) {
    worst = std::max(worst, oracles::enumerate_kernel(toy, f, 2).invariance_residual(pi));
  }
  return {worst < 1e-12, "max ||pi K - pi||_inf over PG/PGAS/PGBS = " + fmt("%.3g", worst)};
}

Verdict proposition_one() {
  const auto boot = oracles::example_toy(false);
  const auto pert = oracles::example_toy(true);
  const double same = oracles::enumerate_kernel(boot, Flavor::kPGAS, 2)
                          .max_abs_difference(oracles::enumerate_kernel(boot, Flavor::kPGBS, 2));
  const double differ = oracles::enumerate_kernel(pert, Flavor::kPGAS, 2)
                            .max_abs_difference(oracles::enumerate_kernel(pert, Flavor::kPGBS, 2));
  return {same < 1e-12 && differ > 1e-6,
          "bootstrap max|K_AS - K_BS| = " + fmt("%.3g", same) + ", perturbed = " + fmt("%.3g", differ)};
}

Verdict kalman_invariance() {
  Rng rng = stream(3);
  const models::LgssParams theta{0.8, 1.0, 0.5};
  const auto data = models::simulate_lgss(theta, 20, rng);
  const auto exact = oracles::lgss_smoother(theta, data.y).mean;
  auto model = std::make_shared<models::Lgss>(theta, data.y);
  learning::FixedParameters fixed(model, {0.8, 1.0, 0.5}, {"a", "q", "r"});
  learning::GibbsConfig cfg;
  cfg.iterations = 200000;
  cfg.burn_in = 1000;
  cfg.kernel = kernel(5, Flavor::kPGAS);
  std::vector<std::vector<double>> series(20);
  for (auto& s : series) s.reserve(cfg.iterations);
  learning::gibbs_run(fixed, cfg, {0.8, 1.0, 0.5}, {}, rng, [&](const learning::IterationRecord& r) {
    if (r.iteration <= cfg.burn_in) return;
    for (std::size_t t = 0; t < 20; ++t) series[t].push_back((*r.trajectory)[t]);
  });
  int within = 0;
  double worst = 0.0;
  for (std::size_t t = 0; t < 20; ++t) {
    const double z = std::abs(mean(series[t]) - exact[t]) / batch_means_standard_error(series[t], 100);
    worst = std::max(worst, z);
    if (z < 3.0) ++within;
  }
  return {within >= 19, std::to_string(within) + "/20 coordinates within 3 MC SE (max |z| = " + fmt("%.2f", worst) + ")"};
}

Verdict sv_update_rates() {
  Rng rng = stream(4);
  const models::SvParams theta{0.9, 0.5};
  const auto data = models::simulate_sv(theta, 400, rng);
  auto model = std::make_shared<models::StochasticVolatility>(theta, data.y);
  double rates[2] = {0.0, 0.0};
  int idx = 0;
  for (Flavor f : {Flavor::kPGAS, Flavor::kPG}) {
    learning::FixedParameters fixed(model, {0.9, 0.5}, {"a", "sigma"});
    learning::GibbsConfig cfg;
    cfg.iterations = 1000;
    cfg.kernel = kernel(20, f);
    Rng chain = rng.split(static_cast<std::uint64_t>(idx));
    rates[idx++] = learning::gibbs_run(fixed, cfg, {0.9, 0.5}, {}, chain).update_rate(0);
  }
  return {rates[0] >= 0.90 && rates[1] <= 0.50,
          "update rate at t=1: PGAS " + fmt("%.3f", rates[0]) + " (>= 0.90), PG " + fmt("%.3f", rates[1]) + " (<= 0.50)"};
}

Verdict acf_contrast() {
  Rng rng = stream(5);
  const models::LgssParams theta{0.8, 1.0, 0.5};
  const auto data = models::simulate_lgss(theta, 100, rng);
  const std::vector<double> init{-0.8, 0.5, 1.0};
  const std::size_t iterations = 20000;
  const std::size_t burn_in = 4000;
  Rng ideal_rng = rng.split(0);
  const auto ideal = oracles::ideal_gibbs_lgss(data.y, {}, iterations, burn_in, {init[0], init[1], init[2]}, ideal_rng);
  const auto q_ideal = ideal.parameter(1);
  const double center = mean(q_ideal);
  const double acf_ideal = acf(q_ideal, 10, center)[10];
  double acf_run[2] = {0.0, 0.0};
  int idx = 0;
  for (Flavor f : {Flavor::kPGAS, Flavor::kPG}) {
    learning::LgssParameterModel params(data.y);
    learning::GibbsConfig cfg;
    cfg.iterations = iterations;
    cfg.burn_in = burn_in;
    cfg.kernel = kernel(5, f);
    Rng chain = rng.split(static_cast<std::uint64_t>(1 + idx));
    const auto rec = learning::gibbs_run(params, cfg, init, {}, chain);
    acf_run[idx++] = acf(rec.parameter(1), 10, center)[10];
  }
  const bool pass = std::abs(acf_run[0] - acf_ideal) <= 0.1 && acf_run[1] - acf_run[0] >= 0.3;
  return {pass, "ACF_q(10): ideal " + fmt("%.3f", acf_ideal) + ", PGAS N=5 " + fmt("%.3f", acf_run[0]) + ", PG N=5 " +
                    fmt("%.3f", acf_run[1]) + " (PG - PGAS = " + fmt("%.3f", acf_run[1] - acf_run[0]) + ")"};
}

Verdict pgas_vs_pgbs() {
  Rng rng = stream(6);
  const auto sys = models::fourth_order_example();
  const auto data = models::simulate_degenerate(sys, 200, rng);
  const auto exact = first_components(oracles::mbf_smoother(oracles::as_linear_system(sys), data.y).mean);
  auto model = std::make_shared<models::CollapsedDegenerateModel>(sys, data.y);
  std::vector<double> as;
  std::vector<double> bs;
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng a = rng.split(10 + s);
    as.push_back(smoothing_rmse(model, exact, kernel(5, Flavor::kPGAS, TruncationPolicy::fixed(1)), 10000, 1000, a));
    Rng b = rng.split(20 + s);
    bs.push_back(smoothing_rmse(model, exact, kernel(5, Flavor::kPGBS, TruncationPolicy::fixed(1)), 10000, 1000, b));
  }
  const double ma = quantile(as, 0.5);
  const double mb = quantile(bs, 0.5);
  return {ma < mb, "median final running RMSE over 5 seeds: PGAS " + fmt("%.4f", ma) + ", PGBS " + fmt("%.4f", mb)};
}

Verdict adaptive_truncation() {
  Rng rng = stream(7);
  const std::size_t horizon = 200;
  const std::size_t systems = 5;
  std::vector<double> full;
  std::vector<double> adaptive;
  double level_sum = 0.0;
  for (std::uint64_t s = 0; s < systems; ++s) {
    Rng sys_rng = rng.split(100 + s);
    const auto sys = models::random_stable_system(5, 2, sys_rng);
    const auto data = models::simulate_degenerate(sys, horizon, sys_rng);
    const auto exact = first_components(oracles::mbf_smoother(oracles::as_linear_system(sys), data.y).mean);
    auto model = std::make_shared<models::CollapsedDegenerateModel>(sys, data.y);
    Rng a = rng.split(200 + s);
    full.push_back(smoothing_rmse(model, exact, kernel(5, Flavor::kPGAS), 3000, 500, a));
    Rng b = rng.split(300 + s);
    double level = 0.0;
    adaptive.push_back(
        smoothing_rmse(model, exact, kernel(5, Flavor::kPGAS, TruncationPolicy::adaptive(0.1, 1e-2)), 3000, 500, b, &level));
    level_sum += level;
  }
  const double mf = quantile(full, 0.5);
  const double ma = quantile(adaptive, 0.5);
  const double level = level_sum / static_cast<double>(systems);
  const bool pass = ma <= 1.5 * mf && level < static_cast<double>(horizon) / 4.0;
  return {pass, "median RMSE over " + std::to_string(systems) + " systems: adaptive " + fmt("%.4f", ma) + ", full " +
                    fmt("%.4f", mf) + " (ratio " + fmt("%.2f", ma / mf) + "); mean level " + fmt("%.2f", level) +
                    " vs T/4 = " + fmt("%.0f", horizon / 4.0)};
}

Verdict proposition_two() {
  Rng rng = stream(8);
  const double rate = 0.5;
  const oracles::GeometricDecayModel model(3 + 20, 1.0, rate);
  const auto profile = oracles::truncation_kl_profile(model, 10, 3, rng);
  bool monotone = true;
  for (std::size_t l = 1; l < profile.kl.size(); ++l) monotone = monotone && profile.kl[l] <= profile.kl[l - 1];
  const bool zero_at_max = profile.kl.back() == 0.0;
  const bool slope_ok = profile.slope < 0.0 && -profile.slope >= 0.8 * rate;
  return {monotone && zero_at_max && slope_ok,
          std::string("monotone ") + (monotone ? "yes" : "no") + ", KL(l_max) = " + fmt("%.3g", profile.kl.back()) +
              ", log-KL slope " + fmt("%.3f", profile.slope) + " (need <= " + fmt("%.3f", -0.8 * rate) + ")"};
}

Verdict particle_saem() {
  Rng rng = stream(9);
  const auto data = models::simulate_lgss({0.8, 1.0, 0.5}, 2000, rng);
  const learning::LgssParameterModel params(data.y);
  learning::SaemConfig cfg;
  cfg.iterations = 2000;
  cfg.exponent = 0.7;
  cfg.kernel = kernel(5, Flavor::kPGAS);
  const std::vector<double> theta0{0.5, 0.5, 0.5};
  Rng chain = rng.split(0);
  const auto trace = learning::psaem_run(params, cfg, theta0, chain);
  const auto& est = trace.theta.back();
  const auto em = learning::lgss_em(data.y, {theta0[0], theta0[1], theta0[2]});
  const auto se = learning::lgss_standard_errors(em.params, data.y);
  const double ref[3] = {em.params.a, em.params.q, em.params.r};
  bool within = em.converged;
  std::string detail = "theta = (" + fmt("%.4f", est[0]) + ", " + fmt("%.4f", est[1]) + ", " + fmt("%.4f", est[2]) +
                       "), EM reference (" + fmt("%.4f", ref[0]) + ", " + fmt("%.4f", ref[1]) + ", " +
                       fmt("%.4f", ref[2]) + "), |z| = (";
  for (int j = 0; j < 3; ++j) {
    const double z = std::abs(est[j] - ref[j]) / se[j];
    within = within && z < 3.0;
    detail += fmt("%.2f", z) + (j < 2 ? ", " : ")");
  }
  const bool a_ok = std::abs(est[0] - 0.8) < 0.1;
  return {a_ok && within, detail};
}

Verdict sir_smoke() {
  Rng rng = stream(10);
  const models::SirParams truth;
  const std::size_t weeks = models::weeks_in_years(4.0, truth);
  const auto data = models::simulate_sir(truth, weeks, rng);
  double worst = 0.0;
  for (const auto& s : data.week_end) worst = std::max(worst, std::abs(s.total() - truth.population));

  learning::SirParameterModel params(truth, data.y);
  learning::GibbsConfig cfg;
  cfg.iterations = 2000;
  cfg.burn_in = 500;
  cfg.kernel = kernel(10, Flavor::kPGAS);
  const std::vector<double> theta0{truth.gamma, truth.r0, truth.alpha, truth.noise, truth.rho, truth.sigma};
  Rng chain = rng.split(0);
  // Re-simulate every sampled path under its θ and track the conservation error.
  const auto rec = learning::gibbs_run(params, cfg, theta0, {}, chain, [&](const learning::IterationRecord& r) {
    const auto p = params.params_for(*r.theta);
    models::SirState x{p.initial_state()[0], p.initial_state()[1], p.initial_state()[2]};
    double mean_i = 0.0;
    for (std::size_t k = 0; k < r.trajectory->length(); ++k) {
      x = models::sir_week(x, r.trajectory->state(k), k, p, mean_i);
      worst = std::max(worst, std::abs(x.total() - p.population));
    }
  });
  const auto rho = rec.parameter(4);
  const auto sigma = rec.parameter(5);
  const double rho_lo = quantile(rho, 0.05), rho_hi = quantile(rho, 0.95);
  const double sig_lo = quantile(sigma, 0.05), sig_hi = quantile(sigma, 0.95);
  const bool conserved = worst <= 1e-6 * truth.population;
  const bool covers = rho_lo <= truth.rho && truth.rho <= rho_hi && sig_lo <= truth.sigma && truth.sigma <= sig_hi;
  return {rec.iterations() == cfg.iterations && conserved && covers,
          std::to_string(weeks) + " weeks, max |S+I+R-N| = " + fmt("%.3g", worst) + "; 90% rho [" + fmt("%.4f", rho_lo) +
              ", " + fmt("%.4f", rho_hi) + "] sigma [" + fmt("%.4f", sig_lo) + ", " + fmt("%.4f", sig_hi) +
              "]; MH acceptance " + fmt("%.2f", params.acceptance_rate())};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "pgas_acceptance_determinism";
  fs::remove_all(root);
  std::size_t configs = 0;
  std::size_t files = 0;
  std::vector<std::string> mismatched;
  std::vector<fs::path> bundled;
  for (const auto& e : fs::directory_iterator(fs::path(PGAS_SOURCE_DIR) / "configs"))
    if (e.path().extension() == ".json") bundled.push_back(e.path());
  std::sort(bundled.begin(), bundled.end());
  for (const auto& cfg : bundled) {
    ++configs;
    const std::string stem = cfg.stem().string();
    for (const char* rep : {"a", "b"}) {
      const auto out = root / stem / rep;
      const std::string cmd = std::string(PGAS_CLI_BINARY) + " run " + cfg.string() + " --out " + out.string() + " > /dev/null 2>&1";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
        mismatched.push_back(stem + " (exit)");
        break;
      }
    }
    const auto dir_a = root / stem / "a";
    if (!fs::exists(dir_a)) continue;
    for (const auto& e : fs::directory_iterator(dir_a)) {
      const auto name = e.path().filename().string();
      if (name.rfind("chain", 0) != 0) continue;
      ++files;
      if (slurp(e.path()) != slurp(root / stem / "b" / name)) mismatched.push_back(stem + "/" + name);
    }
  }
  fs::remove_all(root);
  std::string detail = std::to_string(files) + " chain files from " + std::to_string(configs) + " configs";
  for (const auto& m : mismatched) detail += "; differs: " + m;
  return {configs > 0 && files >= configs && mismatched.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<Criterion> criteria{
      {1, "exact invariance on the enumerated toy", 1.0, exact_invariance},
      {2, "PGAS = PGBS under the bootstrap proposal", 5.0, proposition_one},
      {3, "PGAS smoothing means vs Kalman (T=20, N=5)", 120.0, kalman_invariance},
      {4, "update rates on the SV model", 60.0, sv_update_rates},
      {5, "ACF contrast on the LGSS Gibbs sampler", 600.0, acf_contrast},
      {6, "PGAS vs PGBS with l=1 on the degenerate system", 900.0, pgas_vs_pgbs},
      {7, "adaptive truncation on random 5th-order systems", 900.0, adaptive_truncation},
      {8, "geometric decay of the truncation KL", 1.0, proposition_two},
      {9, "particle SAEM on LGSS (T=2000)", 600.0, particle_saem},
      {10, "SIR smoke run", 1800.0, sir_smoke},
      {11, "byte-identical reruns of bundled configs", 600.0, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
