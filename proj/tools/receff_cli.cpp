// Copyright 2026 The receff Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// receff command-line driver.
//
// Exit codes: 0 success, 1 usage or invalid input, 2 solver limit or solver
// failure, 3 I/O.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "receff/bench.hpp"
#include "receff/instance_io.hpp"
#include "receff/lp_format.hpp"
#include "receff/receff.hpp"

namespace {

using namespace receff;

enum Exit { kOk = 0, kUsage = 1, kLimit = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveFlags {
  std::string method = "median";
  std::string coupling = "fixed";
  std::string scalarization = "ws";
  std::string epsilon = "0";
  std::string backend = "search";
  std::size_t jobs = 1;
  std::size_t node_limit = milp::SolverConfig{}.node_limit;
  double time_limit = 0;
};

void add_solver_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--jobs", f.jobs, "worker threads (does not affect output)")
      ->check(CLI::Range(1, 1024));
  cmd->add_option("--node-limit", f.node_limit, "branch-and-bound node limit per MILP")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--time-limit", f.time_limit, "seconds per MILP, 0 for none")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--backend", f.backend, "opt-coupling solver")
      ->check(CLI::IsMember({"search", "milp"}));
}

Method parse_method(const std::string& s) { return s == "center" ? Method::center : Method::median; }
Scalarization parse_scalarization(const std::string& s) {
  return s == "cheb" ? Scalarization::chebyshev : Scalarization::weighted_sum;
}

Rational parse_epsilon(const std::string& s) {
  Rational e;
  try {
    e = Rational::parse(s);
  } catch (const std::exception&) {
    throw UsageError("--epsilon: not a number: " + s);
  }
  if (e < Rational(0) || e > Rational(1)) throw UsageError("--epsilon must lie in [0, 1]");
  return e;
}

bench::RunOptions run_options(const SolveFlags& f) {
  bench::RunOptions o;
  o.jobs = f.jobs;
  o.backend = f.backend == "milp" ? OptBackend::milp : OptBackend::search;
  o.solver.node_limit = f.node_limit;
  if (f.time_limit > 0) o.solver.time_limit_seconds = f.time_limit;
  return o;
}

RecEffConfig solve_config(const SolveFlags& f) {
  return bench::make_config(parse_method(f.method),
                            f.coupling == "opt" ? Coupling::opt : Coupling::fixed,
                            parse_scalarization(f.scalarization), parse_epsilon(f.epsilon),
                            run_options(f));
}

/// Writes `text` to `path`, or to stdout when `path` is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.close();
  if (!out) throw IoError("write failed: " + path);
}

void export_models(const std::string& dir, const ScenarioSet& set,
                   const std::vector<LambdaVector>& grid, const RecEffConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  const auto sample = efficient_sample(set, grid, cfg.scalarization, cfg.jobs);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    milp::MilpModel model;
    if (cfg.coupling == Coupling::opt) {
      std::vector<std::int64_t> g;
      for (std::size_t j = 0; j < set.num_scenarios(); ++j)
        g.push_back(sample.table.at(j, t, cfg.scalarization));
      model = coupled_model(set, grid[t], cfg.scalarization, g, sample.reference, cfg.epsilon,
                            cfg.method);
    } else {
      std::vector<Solution> pts;
      for (std::size_t j = 0; j < set.num_scenarios(); ++j) pts.push_back(sample.solution(j, t));
      model = cfg.method == Method::center ? center_fixed_model(set.instance(), pts)
                                           : median_fixed_model(set.instance(), pts);
    }
    std::ostringstream name;
    name << "lambda_" << std::setw(3) << std::setfill('0') << t << ".lp";
    emit((std::filesystem::path(dir) / name.str()).string(), milp::export_lp(model));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Recovery-to-efficiency robust sets for bi-objective knapsack scenarios"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("receff 1.0.0, generator ") + bench::kGeneratorName);

  // gen
  bench::GenSpec gen;
  std::string gen_out;
  auto* cmd_gen = app.add_subcommand("gen", "write a seeded random instance");
  cmd_gen->add_option("--items", gen.num_items, "number of items")
      ->required()
      ->check(CLI::Range(1, 1000000));
  cmd_gen->add_option("--scenarios", gen.num_scenarios, "number of scenarios")
      ->required()
      ->check(CLI::Range(1, 1000000));
  cmd_gen->add_option("--seed", gen.seed, "64-bit seed")->required();
  cmd_gen->add_option("--low", gen.cost_low, "smallest weight or cost")->check(CLI::Range(1, 1000000));
  cmd_gen->add_option("--high", gen.cost_high, "largest weight or cost")->check(CLI::Range(1, 1000000));
  cmd_gen->add_option("-o,--output", gen_out, "instance file")->required();

  // robust
  SolveFlags rf;
  std::string robust_in, robust_out, export_dir;
  auto* cmd_robust = app.add_subcommand("robust", "robust set over the lambda grid");
  cmd_robust->add_option("instance", robust_in, "instance file")->required();
  cmd_robust->add_option("--method", rf.method)->check(CLI::IsMember({"center", "median"}));
  cmd_robust->add_option("--coupling", rf.coupling)->check(CLI::IsMember({"fixed", "opt"}));
  cmd_robust->add_option("--scalarization", rf.scalarization)->check(CLI::IsMember({"ws", "cheb"}));
  cmd_robust->add_option("--epsilon", rf.epsilon, "tolerance for the opt coupling, e.g. 0.005");
  cmd_robust->add_option("--export-lp", export_dir, "directory for one LP model per lambda");
  cmd_robust->add_option("-o,--output", robust_out, "robust-set CSV (default stdout)");
  add_solver_flags(cmd_robust, rf);

  // compare
  SolveFlags cf;
  std::vector<std::string> compare_in;
  std::string compare_out, compare_method = "both", compare_scal = "both";
  bench::GenSpec batch;
  std::size_t batch_count = 0;
  auto* cmd_compare = app.add_subcommand("compare", "fixed vs opt total recovery cost");
  cmd_compare->add_option("instances", compare_in, "instance files");
  cmd_compare->add_option("--method", compare_method)->check(CLI::IsMember({"center", "median", "both"}));
  cmd_compare->add_option("--scalarization", compare_scal)->check(CLI::IsMember({"ws", "cheb", "both"}));
  cmd_compare->add_option("--count", batch_count, "generate this many instances instead of reading files")
      ->check(CLI::Range(1, 1000000));
  cmd_compare->add_option("--items", batch.num_items, "items per generated instance")
      ->check(CLI::Range(1, 1000000));
  cmd_compare->add_option("--scenarios", batch.num_scenarios, "scenarios per generated instance")
      ->check(CLI::Range(1, 1000000));
  cmd_compare->add_option("--seed", batch.seed, "seed of the first generated instance");
  cmd_compare->add_option("--low", batch.cost_low)->check(CLI::Range(1, 1000000));
  cmd_compare->add_option("--high", batch.cost_high)->check(CLI::Range(1, 1000000));
  cmd_compare->add_option("-o,--output", compare_out, "report CSV (default stdout)");
  add_solver_flags(cmd_compare, cf);

  // sweep
  SolveFlags sf;
  std::string sweep_in, sweep_out;
  auto* cmd_sweep = app.add_subcommand("sweep", "opt-coupling cost over epsilon = 0, 0.001, ..., 0.01");
  cmd_sweep->add_option("instance", sweep_in, "instance file")->required();
  cmd_sweep->add_option("--method", sf.method)->check(CLI::IsMember({"center", "median"}));
  cmd_sweep->add_option("--scalarization", sf.scalarization)->check(CLI::IsMember({"ws", "cheb"}));
  cmd_sweep->add_option("-o,--output", sweep_out, "sweep CSV (default stdout)");
  add_solver_flags(cmd_sweep, sf);

  // project
  SolveFlags pf;
  std::string project_in, project_out;
  auto* cmd_project = app.add_subcommand("project", "nominal objective pairs of a robust set and the nominal front");
  cmd_project->add_option("instance", project_in, "instance file")->required();
  cmd_project->add_option("--method", pf.method)->check(CLI::IsMember({"center", "median"}));
  cmd_project->add_option("--coupling", pf.coupling)->check(CLI::IsMember({"fixed", "opt"}));
  cmd_project->add_option("--scalarization", pf.scalarization)->check(CLI::IsMember({"ws", "cheb"}));
  cmd_project->add_option("--epsilon", pf.epsilon);
  cmd_project->add_option("-o,--output", project_out, "projection CSV (default stdout)");
  add_solver_flags(cmd_project, pf);

  // front
  std::string front_in, front_out;
  auto* cmd_front = app.add_subcommand("front", "nondominated set of every scenario");
  cmd_front->add_option("instance", front_in, "instance file")->required();
  cmd_front->add_option("-o,--output", front_out, "front CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  const auto grid = bench::lambda_grid();

  if (*cmd_gen) {
    try {
      gen.validate();
    } catch (const StructuralError& e) {
      throw UsageError(e.what());
    }
    save_scenario_set(gen_out, bench::generate(gen));
    std::cout << gen_out << '\n';
    return kOk;
  }

  if (*cmd_robust) {
    const auto cfg = solve_config(rf);
    const auto set = load_scenario_set(robust_in);
    if (!export_dir.empty()) export_models(export_dir, set, grid, cfg);
    std::ostringstream out;
    write_robust_csv(out, generate_robust_set(set, grid, cfg));
    emit(robust_out, out.str());
    return kOk;
  }

  if (*cmd_compare) {
    const auto opt = run_options(cf);
    std::vector<Method> methods;
    if (compare_method != "median") methods.push_back(Method::center);
    if (compare_method != "center") methods.push_back(Method::median);
    std::vector<Scalarization> scals;
    if (compare_scal != "cheb") scals.push_back(Scalarization::weighted_sum);
    if (compare_scal != "ws") scals.push_back(Scalarization::chebyshev);
    if (batch_count > 0 && !compare_in.empty())
      throw UsageError("compare: give instance files or --count, not both");
    if (batch_count == 0 && compare_in.empty())
      throw UsageError("compare: no instance files and no --count");
    const std::size_t count = batch_count > 0 ? batch_count : compare_in.size();
    bench::ExperimentReport report;
    report.seed = batch.seed;
    for (std::size_t k = 0; k < count; ++k) {
      std::string label;
      std::optional<ScenarioSet> set;
      if (batch_count > 0) {
        auto g = batch;
        g.seed = batch.seed + k;
        try {
          set = bench::generate(g);
        } catch (const StructuralError& e) {
          throw UsageError(e.what());
        }
        label = "seed " + std::to_string(g.seed);
      } else {
        set = load_scenario_set(compare_in[k]);
        label = compare_in[k];
      }
      for (auto m : methods)
        for (auto s : scals) {
          auto row = bench::compare_couplings(*set, m, s, opt);
          row.instance = k + 1;
          report.rows.push_back(row);
        }
      std::cerr << "receff: compare: instance " << (k + 1) << '/' << count << " (" << label << ") done\n";
    }
    std::ostringstream out;
    bench::write_report_csv(out, report);
    emit(compare_out, out.str());
    return kOk;
  }

  if (*cmd_sweep) {
    const auto opt = run_options(sf);
    const auto set = load_scenario_set(sweep_in);
    std::ostringstream out;
    bench::write_sweep_csv(out, bench::epsilon_sweep(set, parse_method(sf.method),
                                                     parse_scalarization(sf.scalarization),
                                                     bench::epsilon_grid(), opt));
    emit(sweep_out, out.str());
    return kOk;
  }

  if (*cmd_project) {
    const auto cfg = solve_config(pf);
    const auto set = load_scenario_set(project_in);
    const auto label = pf.method + "_" + pf.coupling + "_" + pf.scalarization;
    std::ostringstream out;
    bench::write_projection_csv(
        out, bench::nominal_projection(set, {generate_robust_set(set, grid, cfg)}, {label}));
    emit(project_out, out.str());
    return kOk;
  }

  if (*cmd_front) {
    const auto set = load_scenario_set(front_in);
    std::vector<NondominatedFront> fronts;
    for (const auto& sc : set.scenarios()) fronts.push_back(pareto_front(set.instance(), sc));
    std::ostringstream out;
    write_front_csv(out, fronts);
    emit(front_out, out.str());
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "receff: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const receff::IoError& e) {
    std::cerr << "receff: i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const receff::milp::LimitError& e) {
    std::cerr << "receff: solver limit: " << e.what() << '\n';
    return kLimit;
  } catch (const receff::milp::SolverError& e) {
    std::cerr << "receff: solver error: " << e.what() << '\n';
    return kLimit;
  } catch (const std::logic_error& e) {
    // structural, unsupported and precondition errors
    std::cerr << "receff: invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "receff: error: " << e.what() << '\n';
    return kIo;
  }
}
