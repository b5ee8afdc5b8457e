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

// Seeded instances, the lambda grid, and the experiment runners.
//
// Generator "receff-gen-v1": a splitmix64 sequence started at the seed
// yields one 64-bit seed per stream; stream 0 seeds the weights, stream
// 1 + s seeds the costs of scenario s (objective-major, then item). Each
// stream is a std::mt19937_64, and values in [lo, hi] are drawn by
// rejection of the biased low range followed by modulo reduction.

#ifndef RECEFF_BENCH_HPP
#define RECEFF_BENCH_HPP

#include <cstdint>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "receff/frontier.hpp"
#include "receff/model.hpp"
#include "receff/rational.hpp"
#include "receff/receff.hpp"

namespace receff::bench {

inline constexpr const char* kGeneratorName = "receff-gen-v1";

struct GenSpec {
  std::size_t num_items = 20;
  std::size_t num_scenarios = 10;
  std::size_t num_objectives = 2;
  std::int64_t cost_low = 10;
  std::int64_t cost_high = 100;
  std::uint64_t seed = 0;

  void validate() const {
    detail::require(num_items >= 1, "gen: at least one item required");
    detail::require(num_scenarios >= 1, "gen: at least one scenario required");
    detail::require(num_objectives >= 1, "gen: at least one objective required");
    detail::require(cost_low >= 1, "gen: cost_low must be at least 1");
    detail::require(cost_low <= cost_high, "gen: cost_low exceeds cost_high");
  }
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform integer in [lo, hi] from a 64-bit engine.
inline std::int64_t uniform_draw(std::mt19937_64& engine, std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(engine());
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t u = engine();
  while (u < threshold) u = engine();
  return lo + static_cast<std::int64_t>(u % range);
}

inline ScenarioSet generate(const GenSpec& spec) {
  spec.validate();
  std::uint64_t state = spec.seed;
  std::mt19937_64 weights_rng(splitmix64(state));
  std::vector<std::int64_t> weights(spec.num_items);
  std::int64_t sum = 0;
  for (auto& w : weights) {
    w = uniform_draw(weights_rng, spec.cost_low, spec.cost_high);
    sum += w;
  }
  const std::int64_t capacity = (sum + 1) / 2;
  std::vector<ScenarioCosts> scenarios;
  for (std::size_t s = 0; s < spec.num_scenarios; ++s) {
    std::mt19937_64 rng(splitmix64(state));
    std::vector<std::vector<std::int64_t>> rows(spec.num_objectives,
                                                std::vector<std::int64_t>(spec.num_items));
    for (auto& row : rows)
      for (auto& c : row) c = uniform_draw(rng, spec.cost_low, spec.cost_high);
    scenarios.emplace_back(std::move(rows));
  }
  return ScenarioSet(KnapsackInstance(std::move(weights), capacity), std::move(scenarios));
}

/// (0.01 k, 1 - 0.01 k) for k = 0..100.
inline std::vector<LambdaVector> lambda_grid() {
  std::vector<LambdaVector> out;
  for (std::int64_t k = 0; k <= 100; ++k) out.push_back(LambdaVector::from_hundredths(k));
  return out;
}

/// k / 1000 for k = 0..10.
inline std::vector<Rational> epsilon_grid() {
  std::vector<Rational> out;
  for (std::int64_t k = 0; k <= 10; ++k) out.emplace_back(k, 1000);
  return out;
}

/// `value` rounded half-up (away from zero on ties) to `digits` decimals.
inline std::string format_fixed(const Rational& value, int digits) {
  using detail::wide_int;
  wide_int scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  const bool negative = value.num < 0;
  const wide_int mag = negative ? -static_cast<wide_int>(value.num) : value.num;
  const wide_int scaled = (2 * mag * scale + value.den) / (2 * static_cast<wide_int>(value.den));
  const auto whole = static_cast<std::int64_t>(scaled / scale);
  std::string out = (negative && scaled != 0) ? "-" : "";
  out += std::to_string(whole);
  if (digits > 0) {
    auto frac = std::to_string(static_cast<std::int64_t>(scaled % scale));
    out += "." + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  return out;
}

/// (a - b) / b * 100; zero when b is zero.
inline Rational percent_deviation(std::int64_t a, std::int64_t b) {
  if (b == 0) return Rational(0);
  return Rational((a - b) * 100, b);
}

/// The two-decimal string reported in tables.
inline std::string percent_deviation_string(std::int64_t a, std::int64_t b) {
  return format_fixed(percent_deviation(a, b), 2);
}

struct RunOptions {
  std::size_t jobs = 1;
  OptBackend backend = OptBackend::search;
  milp::SolverConfig solver;
};

inline RecEffConfig make_config(Method method, Coupling coupling, Scalarization s,
                                const Rational& epsilon, const RunOptions& opt) {
  RecEffConfig c;
  c.method = method;
  c.coupling = coupling;
  c.scalarization = s;
  c.epsilon = epsilon;
  c.backend = opt.backend;
  c.solver = opt.solver;
  c.jobs = opt.jobs;
  return c;
}

struct ReportRow {
  std::size_t items = 0;
  std::size_t instance = 0;
  Method method = Method::median;
  Scalarization scalarization = Scalarization::weighted_sum;
  std::int64_t cost_fixed = 0;
  std::int64_t cost_opt = 0;

  Rational percent() const { return percent_deviation(cost_fixed, cost_opt); }
};

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::uint64_t seed = 0;
  std::string generator = kGeneratorName;
};

/// Total fixed and opt (epsilon 0) recovery costs over the full grid.
inline ReportRow compare_couplings(const ScenarioSet& set, Method method, Scalarization s,
                                   const RunOptions& opt = {}) {
  const auto grid = lambda_grid();
  const auto sample = efficient_sample(set, grid, s, opt.jobs);
  ReportRow row;
  row.items = set.num_items();
  row.method = method;
  row.scalarization = s;
  row.cost_fixed = total_recovery_cost(
      generate_robust_set(set, grid, sample, make_config(method, Coupling::fixed, s, 0, opt)));
  row.cost_opt = total_recovery_cost(
      generate_robust_set(set, grid, sample, make_config(method, Coupling::opt, s, 0, opt)));
  return row;
}

/// CSV: l,inst,method,scalarization,cost_fixed,cost_opt,pct_dev
inline void write_report_csv(std::ostream& out, const ExperimentReport& report) {
  out << "l,inst,method,scalarization,cost_fixed,cost_opt,pct_dev\n";
  for (const auto& r : report.rows)
    out << r.items << ',' << r.instance << ',' << to_string(r.method) << ','
        << to_string(r.scalarization) << ',' << r.cost_fixed << ',' << r.cost_opt << ','
        << format_fixed(r.percent(), 2) << '\n';
}

/// (v0 - v) / v0; zero when v0 is zero.
inline Rational sweep_deviation(std::int64_t v0, std::int64_t v) {
  return v0 == 0 ? Rational(0) : Rational(v0 - v, v0);
}

struct SweepRow {
  Rational epsilon;
  std::int64_t v = 0;
  /// (v(0) - v(eps)) / v(0), zero when v(0) is zero
  Rational deviation;
};

/// Total opt-coupling recovery cost over the full grid for every epsilon.
inline std::vector<SweepRow> epsilon_sweep(const ScenarioSet& set, Method method, Scalarization s,
                                           const std::vector<Rational>& epsilons = epsilon_grid(),
                                           const RunOptions& opt = {}) {
  const auto grid = lambda_grid();
  const auto sample = efficient_sample(set, grid, s, opt.jobs);
  std::vector<SweepRow> rows;
  for (const auto& e : epsilons) {
    SweepRow r;
    r.epsilon = e;
    r.v = total_recovery_cost(
        generate_robust_set(set, grid, sample, make_config(method, Coupling::opt, s, e, opt)));
    rows.push_back(r);
  }
  const auto v0 = rows.empty() ? 0 : rows.front().v;
  for (auto& r : rows) r.deviation = sweep_deviation(v0, r.v);
  return rows;
}

/// CSV: epsilon,v,deviation (deviation to six decimals)
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "epsilon,v,deviation\n";
  for (const auto& r : rows)
    out << format_fixed(r.epsilon, 3) << ',' << r.v << ',' << format_fixed(r.deviation, 6) << '\n';
}

struct ProjectionRow {
  std::string series;
  std::int64_t f1 = 0;
  std::int64_t f2 = 0;
  Solution solution;
};

/// Nominal-scenario objective pairs of the nominal front ("nominal") and of
/// every robust solution of each labelled set. Empty when `sets` is empty.
inline std::vector<ProjectionRow> nominal_projection(const ScenarioSet& set,
                                                     const std::vector<RobustSet>& sets,
                                                     const std::vector<std::string>& labels) {
  detail::require(labels.size() == sets.size(), "nominal_projection: one label per set required");
  std::vector<ProjectionRow> out;
  if (sets.empty()) return out;
  const auto& nominal = set.nominal();
  for (const auto& e : pareto_front(set.instance(), nominal).entries)
    out.push_back({"nominal", e.values[0], e.values[1], e.solution});
  for (std::size_t k = 0; k < sets.size(); ++k)
    for (const auto& p : sets[k].points) {
      const auto f = evaluate(nominal, p.robust_solution);
      out.push_back({labels[k], f[0], f[1], p.robust_solution});
    }
  return out;
}

/// CSV: series,f1_nominal,f2_nominal,bits
inline void write_projection_csv(std::ostream& out, const std::vector<ProjectionRow>& rows) {
  out << "series,f1_nominal,f2_nominal,bits\n";
  for (const auto& r : rows)
    out << r.series << ',' << r.f1 << ',' << r.f2 << ',' << r.solution.to_string() << '\n';
}

}  // namespace receff::bench

#endif  // RECEFF_BENCH_HPP
