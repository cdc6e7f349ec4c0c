// Copyright 2026 The rdsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdo/bounds.hpp"
#include "rdo/engine.hpp"
#include "rdo/errors.hpp"
#include "rdo/fixtures.hpp"
#include "rdo/io.hpp"
#include "rdo/model.hpp"
#include "rdo/redundancy.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitBoundFailure = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string fixture = "paper-regression";
  std::string dataset;
};

rdo::RegressionProblem load_dataset(const GlobalOpts& g) {
  if (!g.dataset.empty()) return rdo::load_problem_csv(g.dataset);
  if (g.fixture != "paper-regression") {
    throw rdo::ConfigError("unknown fixture: " + g.fixture);
  }
  return rdo::paper_regression();
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
  if (g.out_dir.empty()) return name;
  std::filesystem::create_directories(g.out_dir);
  return (std::filesystem::path(g.out_dir) / name).string();
}

std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

int cmd_epsilon(const GlobalOpts& g, int f_max, int r_max) {
  const auto problem = load_dataset(g);
  const auto grid = rdo::epsilon_grid(problem, f_max, r_max);
  const std::string path = out_path(g, "epsilon.csv");
  rdo::write_epsilon_grid_csv(path, grid);
  std::cout << "f  r  epsilon     valid\n";
  for (const auto& cell : grid) {
    std::printf("%-2d %-2d %-11s %s\n", cell.f, cell.r, format_g(cell.epsilon).c_str(),
                cell.valid ? "yes" : "no");
  }
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_bounds(const GlobalOpts& g, int f, int r, int tau, double eta0, double eta, double sigma,
               double cube_lo, double cube_hi) {
  const auto problem = load_dataset(g);
  const double mu = rdo::lipschitz_mu(problem);
  const double gamma = rdo::convexity_gamma(problem, f);
  const double epsilon = rdo::compute_epsilon(problem, f, r).epsilon;

  json report;
  report["n"] = problem.n();
  report["f"] = f;
  report["r"] = r;
  report["mu"] = mu;
  report["gamma"] = gamma;
  report["epsilon"] = epsilon;

  std::cout << "n=" << problem.n() << " f=" << f << " r=" << r << "\n";
  std::cout << "mu      " << format_g(mu) << "\n";
  std::cout << "gamma   " << format_g(gamma) << "\n";
  std::cout << "epsilon " << format_g(epsilon) << "\n";

  try {
    const auto det = rdo::bound_deterministic(problem.n(), f, r, mu, gamma, epsilon);
    report["alpha"] = det.alpha;
    report["D"] = det.D;
    std::cout << "alpha   " << format_g(det.alpha) << "\n";
    std::cout << "D       " << format_g(det.D) << "\n";
  } catch (const rdo::NonPositiveMarginError& e) {
    report["alpha"] = e.alpha();
    report["D"] = nullptr;
    std::cout << "alpha   " << format_g(e.alpha()) << " (not positive; no finite D)\n";
  }

  const auto domain = rdo::BoxDomain::cube(problem.d(), cube_lo, cube_hi);
  std::vector<int> all(problem.n());
  for (int i = 0; i < problem.n(); ++i) all[i] = i;
  const double Gamma = rdo::domain_radius(domain, problem.least_squares_min(all));
  report["Gamma"] = Gamma;
  std::cout << "Gamma   " << format_g(Gamma) << "\n";

  if (f == 0) {
    try {
      const auto stale = rdo::bound_stale(problem.n(), r, mu, gamma, epsilon, tau, eta0, Gamma);
      report["G"] = stale.G;
      report["D_stale"] = stale.D;
      std::cout << "G       " << format_g(stale.G) << "  (tau=" << tau << ")\n";
      std::cout << "D_stale " << format_g(stale.D) << "\n";
    } catch (const rdo::NonPositiveMarginError&) {
    }
  }

  if (eta > 0.0) {
    try {
      const auto s = rdo::stochastic_params(problem.n(), f, r, mu, gamma, eta, epsilon, sigma);
      report["eta_bar"] = s.eta_bar;
      report["rho"] = s.rho;
      report["M_bar"] = s.M_bar;
      std::cout << "eta_bar " << format_g(s.eta_bar) << "\n";
      std::cout << "rho     " << format_g(s.rho) << "\n";
      std::cout << "M_bar   " << format_g(s.M_bar) << "\n";
    } catch (const rdo::StepTooLargeError& e) {
      std::cerr << "error: " << e.what() << " (eta=" << e.eta() << ", eta_bar=" << e.eta_bar()
                << ")\n";
      return kExitUsage;
    }
  }

  rdo::write_text_atomic(out_path(g, "bounds.json"), report.dump(2) + "\n");
  return kExitOk;
}

int cmd_run(const GlobalOpts& g, const std::string& config_path) {
  rdo::RunConfig config = rdo::load_run_config(config_path);
  const rdo::Trajectory traj = rdo::run(config);
  const std::string traj_path = out_path(g, "trajectory.csv");
  rdo::write_trajectory_csv(traj_path, traj);
  rdo::write_text_atomic(out_path(g, "summary.json"), rdo::run_summary_json(config, traj));
  std::cout << "x_out = (";
  for (Eigen::Index j = 0; j < traj.x_out().size(); ++j) {
    std::cout << (j ? ", " : "") << format_g(traj.x_out()[j]);
  }
  std::cout << ")  dist = " << format_g(traj.points.back().dist_to_xh) << "\n";
  std::cout << "wrote " << traj_path << "\n";
  return kExitOk;
}

struct TableCell {
  int f, r;
  rdo::FaultKind kind;
  std::uint64_t seed;
  rdo::Vector x_out;
  double dist;
  double dstar;
  bool pass;
};

int cmd_table(const GlobalOpts& g, int seeds) {
  const auto problem = rdo::paper_regression();
  std::vector<TableCell> cells;
  bool all_pass = true;
  for (int f = 0; f <= 2; ++f) {
    for (int r = 0; r <= 2; ++r) {
      for (const auto kind : {rdo::FaultKind::GradientReverse, rdo::FaultKind::RandomGaussian}) {
        if (f == 0 && kind == rdo::FaultKind::RandomGaussian) continue;  // no faulty agent
        for (int s = 0; s < seeds; ++s) {
          rdo::RunConfig config{
              problem,
              rdo::AgentRoster::make(problem.n(), f, r, kind),
              rdo::BoxDomain::cube(problem.d(), -1000.0, 1000.0),
              f == 0 ? rdo::GarSpec::sum_fastest() : rdo::GarSpec::cge(),
              rdo::StragglerModel::uniform_random(),
              rdo::StepSchedule::harmonic(1.5),
              rdo::NoiseModel::none(),
              rdo::Vector::Zero(problem.d()),
              500,
              g.seed + static_cast<std::uint64_t>(s),
          };
          const auto traj = rdo::run(config);
          TableCell cell{f,
                         r,
                         kind,
                         config.seed,
                         traj.x_out(),
                         traj.points.back().dist_to_xh,
                         rdo::reference::error_radius(f, r),
                         false};
          // The published radius for f = r = 0 is exactly zero; finite
          // precision needs a floor there.
          cell.pass = cell.dist <= std::max(cell.dstar, 1e-3);
          all_pass = all_pass && cell.pass;
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  std::ostringstream csv;
  csv << "f,r,fault,seed,x_out_1,x_out_2,dist,dstar,pass\r\n";
  std::cout << "f  r  fault     seed  x_out                 dist        D*      check\n";
  for (const auto& c : cells) {
    const char* fault = c.kind == rdo::FaultKind::GradientReverse ? "grad-rev" : "random";
    csv << c.f << "," << c.r << "," << fault << "," << c.seed << "," << c.x_out[0] << ","
        << c.x_out[1] << "," << c.dist << "," << c.dstar << "," << (c.pass ? "true" : "false")
        << "\r\n";
    std::printf("%-2d %-2d %-9s %-5llu (%8.4f, %8.4f)  %-10s  %-6s  %s\n", c.f, c.r, fault,
                static_cast<unsigned long long>(c.seed), c.x_out[0], c.x_out[1],
                format_g(c.dist).c_str(), format_g(c.dstar).c_str(), c.pass ? "PASS" : "FAIL");
    if (!c.pass) {
      std::cerr << "bound violated at f=" << c.f << " r=" << c.r << " fault=" << fault
                << " seed=" << c.seed << "\n";
    }
  }
  rdo::write_text_atomic(out_path(g, "table.csv"), csv.str());
  return all_pass ? kExitOk : kExitBoundFailure;
}

int cmd_stochastic_check(const GlobalOpts& g, const std::string& config_path, int seeds,
                         std::vector<int> checkpoints) {
  rdo::RunConfig config = rdo::load_run_config(config_path);
  if (config.schedule.kind != rdo::StepSchedule::Kind::Constant) {
    throw rdo::ConfigError("stochastic-check needs a constant step schedule");
  }
  if (config.noise.kind != rdo::NoiseModel::Kind::Gaussian) {
    throw rdo::ConfigError("stochastic-check needs gaussian noise configured");
  }
  const double mu = rdo::lipschitz_mu(config.problem);
  const double gamma = rdo::convexity_gamma(config.problem, config.roster.f);
  const double epsilon =
      rdo::compute_epsilon(config.problem, config.roster.f, config.roster.r).epsilon;
  const auto params =
      rdo::stochastic_params(config.roster.n, config.roster.f, config.roster.r, mu, gamma,
                             config.schedule.a, epsilon, config.noise.sigma);

  const auto honest = config.roster.honest_set();
  const rdo::Vector x_h = config.problem.least_squares_min(honest);
  const double initial_sq = (config.x0 - x_h).squaredNorm();

  std::vector<std::uint64_t> seed_list;
  for (int s = 0; s < seeds; ++s) seed_list.push_back(g.seed + static_cast<std::uint64_t>(s));

  bool all_pass = true;
  std::cout << "rho = " << format_g(params.rho) << ", M_bar = " << format_g(params.M_bar)
            << ", eta_bar = " << format_g(params.eta_bar) << "\n";
  std::cout << "t      empirical MSE  envelope    check\n";
  for (int t : checkpoints) {
    rdo::RunConfig c = config;
    c.iterations = t;
    const auto mc = rdo::monte_carlo_mse(c, seed_list, x_h, t);
    const double envelope = std::pow(params.rho, t) * initial_sq +
                            (1.0 - std::pow(params.rho, t)) / (1.0 - params.rho) * params.M_bar;
    const bool pass = mc.mse <= envelope + 3.0 * mc.std_error;
    all_pass = all_pass && pass;
    std::printf("%-6d %-14s %-11s %s\n", t, format_g(mc.mse).c_str(), format_g(envelope).c_str(),
                pass ? "PASS" : "FAIL");
  }
  return all_pass ? kExitOk : kExitBoundFailure;
}

int cmd_sweep(const GlobalOpts& g, const std::string& config_path, std::vector<int> fs,
              std::vector<int> rs, std::vector<std::string> faults,
              std::vector<std::uint64_t> seeds) {
  const std::string base_text = [&] {
    std::ifstream in(config_path);
    if (!in) throw rdo::ConfigError("cannot open config file: " + config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }();
  rdo::load_run_config(config_path);  // validate the base config up front

  struct Cell {
    std::string name;
    int f, r;
    std::string fault;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int f : fs) {
    for (int r : rs) {
      for (const auto& fault : faults) {
        for (std::uint64_t seed : seeds) {
          std::ostringstream name;
          name << "f" << f << "_r" << r << "_" << (fault == "gradient-reverse" ? "gradrev" : "random")
               << "_s" << seed;
          cells.push_back({name.str(), f, r, fault, seed});
        }
      }
    }
  }

  struct CellResult {
    std::string name;
    bool skipped = false;
    std::string reason;
    double dist = 0.0;
  };
  auto run_cell = [&](const Cell& cell) -> CellResult {
    json j = json::parse(base_text);
    j["roster"]["f"] = cell.f;
    j["roster"]["r"] = cell.r;
    j["roster"]["fault_kind"] = cell.fault;
    j["roster"].erase("byzantine");
    j["seed"] = cell.seed;
    try {
      rdo::RunConfig config = rdo::parse_run_config(j.dump());
      const auto traj = rdo::run(config);
      rdo::write_trajectory_csv(out_path(g, cell.name + ".csv"), traj);
      rdo::write_text_atomic(out_path(g, cell.name + ".json"),
                             rdo::run_summary_json(config, traj));
      return {cell.name, false, "", traj.points.back().dist_to_xh};
    } catch (const std::exception& e) {
      return {cell.name, true, e.what(), 0.0};
    }
  };

  std::vector<std::future<CellResult>> futures;
  for (const auto& cell : cells) {
    futures.push_back(std::async(std::launch::async, run_cell, cell));
  }
  std::vector<CellResult> results;
  for (auto& fut : futures) results.push_back(fut.get());
  std::sort(results.begin(), results.end(),
            [](const CellResult& a, const CellResult& b) { return a.name < b.name; });

  for (const auto& res : results) {
    if (res.skipped) {
      std::cout << res.name << "  SKIPPED: " << res.reason << "\n";
    } else {
      std::cout << res.name << "  dist = " << format_g(res.dist) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine- and straggler-resilient distributed gradient descent toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Base seed for all random streams");
  app.add_option("--out", g.out_dir, "Output directory");
  app.add_option("--fixture", g.fixture, "Built-in dataset name (paper-regression)");
  app.add_option("--dataset", g.dataset, "Dataset CSV path (overrides --fixture)");

  auto* epsilon = app.add_subcommand("epsilon", "Exact redundancy grid over (f, r)");
  int f_max = 2, r_max = 2;
  epsilon->add_option("--f-max", f_max, "Largest fault budget");
  epsilon->add_option("--r-max", r_max, "Largest straggler budget");

  auto* bounds = app.add_subcommand("bounds", "Closed-form convergence constants");
  int bf = 0, br = 0, btau = 0;
  double beta0 = 1.5, beta = 0.0, bsigma = 0.0, cube_lo = -1000.0, cube_hi = 1000.0;
  bounds->add_option("--f", bf, "Fault budget");
  bounds->add_option("--r", br, "Straggler budget");
  bounds->add_option("--tau", btau, "Staleness window for the stale bound");
  bounds->add_option("--eta0", beta0, "Initial step size for the stale bound");
  bounds->add_option("--eta", beta, "Constant step size; enables stochastic parameters");
  bounds->add_option("--sigma", bsigma, "Gradient noise bound for stochastic parameters");
  bounds->add_option("--cube-lo", cube_lo, "Domain cube lower bound");
  bounds->add_option("--cube-hi", cube_hi, "Domain cube upper bound");

  auto* run_cmd = app.add_subcommand("run", "Run one experiment from a JSON config");
  std::string run_config;
  run_cmd->add_option("config", run_config, "JSON config path")->required();

  auto* table = app.add_subcommand("table", "Benchmark sweep with bound checks");
  int table_seeds = 1;
  table->add_option("--seeds", table_seeds, "Seeds per cell");

  auto* stoch = app.add_subcommand("stochastic-check", "Monte Carlo envelope check");
  std::string stoch_config;
  int stoch_seeds = 100;
  std::vector<int> checkpoints{100, 500, 2000};
  stoch->add_option("config", stoch_config, "JSON config path")->required();
  stoch->add_option("--seeds", stoch_seeds, "Number of Monte Carlo seeds");
  stoch->add_option("--checkpoints", checkpoints, "Iteration checkpoints");

  auto* sweep = app.add_subcommand("sweep", "Concurrent sweep over (f, r, fault, seed)");
  std::string sweep_config;
  std::vector<int> sweep_f{0, 1, 2}, sweep_r{0, 1, 2};
  std::vector<std::string> sweep_faults{"gradient-reverse", "random-gaussian"};
  std::vector<std::uint64_t> sweep_seeds{1};
  sweep->add_option("config", sweep_config, "Base JSON config path")->required();
  sweep->add_option("--f", sweep_f, "Fault budgets");
  sweep->add_option("--r", sweep_r, "Straggler budgets");
  sweep->add_option("--faults", sweep_faults, "Fault kinds");
  sweep->add_option("--seeds", sweep_seeds, "Seeds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (epsilon->parsed()) return cmd_epsilon(g, f_max, r_max);
    if (bounds->parsed())
      return cmd_bounds(g, bf, br, btau, beta0, beta, bsigma, cube_lo, cube_hi);
    if (run_cmd->parsed()) return cmd_run(g, run_config);
    if (table->parsed()) return cmd_table(g, table_seeds);
    if (stoch->parsed()) return cmd_stochastic_check(g, stoch_config, stoch_seeds, checkpoints);
    if (sweep->parsed()) return cmd_sweep(g, sweep_config, sweep_f, sweep_r, sweep_faults,
                                          sweep_seeds);
  } catch (const rdo::StepTooLargeError& e) {
    std::cerr << "error: " << e.what() << " (eta=" << e.eta() << ", eta_bar=" << e.eta_bar()
              << ")\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
