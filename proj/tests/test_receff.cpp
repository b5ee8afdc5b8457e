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

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "receff/receff.hpp"

namespace receff {
namespace {

Solution bits(const char* s) { return Solution::from_string(s); }

KnapsackInstance unit3(std::int64_t cap) { return KnapsackInstance({1, 1, 1}, cap); }

/// Random feasible selection: items in random order, each kept with
/// probability one half while it fits.
Solution random_feasible(std::mt19937_64& rng, const KnapsackInstance& inst) {
  std::vector<std::size_t> order(inst.num_items());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Solution x(inst.num_items());
  std::int64_t w = 0;
  for (auto j : order) {
    if (rng() % 2 && w + inst.weight(j) <= inst.capacity()) {
      x.bits[j] = 1;
      w += inst.weight(j);
    }
  }
  return x;
}

std::vector<std::int64_t> oracle_g(const ScenarioSet& set, const LambdaVector& lam, bool ws,
                                   const std::vector<std::int64_t>& h) {
  std::vector<std::int64_t> g;
  for (const auto& sc : set.scenarios())
    g.push_back(ws ? oracle::weighted_sum(set.instance(), sc, lam).scaled
                   : oracle::chebyshev(set.instance(), sc, lam, h).scaled);
  return g;
}

OptimalValueTable table_of(const std::vector<std::int64_t>& g, std::size_t t, Scalarization s) {
  OptimalValueTable table;
  for (std::size_t j = 0; j < g.size(); ++j) table.set(j, t, s, g[j]);
  return table;
}

TEST(CenterFixed, SinglePointCostsNothing) {
  auto inst = unit3(2);
  auto [x, cost] = solve_center_fixed(inst, {bits("101")});
  EXPECT_EQ(cost, 0);
  EXPECT_EQ(x, bits("101"));
}

TEST(CenterFixed, ComplementaryPoints) {
  auto [x, cost] = solve_center_fixed(unit3(3), {bits("000"), bits("111")});
  EXPECT_EQ(cost, 2);
  EXPECT_EQ(recovery_cost(Method::center, x, {bits("000"), bits("111")}), 2);
}

TEST(CenterFixed, ZeroCapacityForcesEmptySelection) {
  auto [x, cost] = solve_center_fixed(unit3(0), {bits("000"), bits("111")});
  EXPECT_EQ(x, bits("000"));
  EXPECT_EQ(cost, 3);
  auto [y, mcost] = solve_median_fixed(unit3(0), {bits("000"), bits("111")});
  EXPECT_EQ(y, bits("000"));
  EXPECT_EQ(mcost, 3);
  EXPECT_THROW(solve_center_fixed(unit3(0), {bits("00")}), StructuralError);
  EXPECT_THROW(solve_median_fixed(unit3(0), {}), StructuralError);
}

TEST(MedianFixed, MajorityPerItem) {
  auto [x, cost] = solve_median_fixed(unit3(3), {bits("110"), bits("011"), bits("010")});
  EXPECT_EQ(x, bits("010"));
  EXPECT_EQ(cost, 2);
}

TEST(MedianFixed, IdenticalPoints) {
  auto [x, cost] = solve_median_fixed(unit3(2), {bits("011"), bits("011"), bits("011")});
  EXPECT_EQ(x, bits("011"));
  EXPECT_EQ(cost, 0);
  auto [y, c1] = solve_median_fixed(unit3(1), {bits("100")});
  EXPECT_EQ(y, bits("100"));
  EXPECT_EQ(c1, 0);
}

TEST(MedianFixed, MatchesEnumerationAndMilp) {
  std::mt19937_64 rng(501);
  for (int trial = 0; trial < 40; ++trial) {
    auto set = oracle::random_set(rng, 4 + rng() % 8, 1);
    const auto& inst = set.instance();
    std::vector<Solution> pts;
    const auto m = 1 + rng() % 5;
    for (std::size_t k = 0; k < m; ++k) pts.push_back(random_feasible(rng, inst));
    auto [x, cost] = solve_median_fixed(inst, pts);
    EXPECT_TRUE(is_feasible(inst, x));
    EXPECT_EQ(cost, recovery_cost(Method::median, x, pts));
    std::vector<std::vector<Solution>> singletons;
    for (auto& p : pts) singletons.push_back({p});
    EXPECT_EQ(cost, oracle::recovery_optimum(inst, singletons, false));
    auto s = milp::solve_exact(median_fixed_model(inst, pts));
    ASSERT_TRUE(s.optimal());
    EXPECT_NEAR(s.objective_value, static_cast<double>(cost), 1e-9);
    auto [cx, ccost] = solve_center_fixed(inst, pts);
    EXPECT_TRUE(is_feasible(inst, cx));
    EXPECT_EQ(ccost, oracle::recovery_optimum(inst, singletons, true));
  }
}

TEST(RecoveryTargets, MatchEnumeration) {
  std::mt19937_64 rng(502);
  const Rational eps_values[] = {Rational(0), Rational(1, 200), Rational(1, 100), Rational(1, 10)};
  for (int trial = 0; trial < 30; ++trial) {
    auto set = oracle::random_set(rng, 4 + rng() % 7, 2);
    const auto h = oracle::ideal(set);
    const auto lam = LambdaVector::from_hundredths(static_cast<std::int64_t>(rng() % 101));
    for (bool ws : {true, false}) {
      const auto g = oracle_g(set, lam, ws, h);
      for (const auto& eps : eps_values) {
        OptimalityBound b{ws ? Scalarization::weighted_sum : Scalarization::chebyshev, lam, g[1],
                          eps, ReferencePoint{h}};
        auto got = recovery_targets(set.instance(), set.scenario(1), b);
        auto want = oracle::admitted_set(set.instance(), set.scenario(1), ws, lam, g[1], eps, h);
        ASSERT_EQ(got, want) << "trial " << trial;
        EXPECT_FALSE(got.empty());
      }
    }
  }
}

TEST(RecoveryTargets, LimitIsAnError) {
  std::mt19937_64 rng(3);
  auto set = oracle::random_set(rng, 8, 1);
  OptimalityBound b{Scalarization::weighted_sum, LambdaVector::from_hundredths(50), 0,
                    Rational(0), ReferencePoint{}};
  // g = 0 admits every feasible selection
  EXPECT_THROW(recovery_targets(set.instance(), set.scenario(0), b, 5), milp::LimitError);
}

TEST(SolveCoupled, MatchesEnumeration) {
  std::mt19937_64 rng(503);
  for (int trial = 0; trial < 60; ++trial) {
    auto set = oracle::random_set(rng, 3 + rng() % 8, 1);
    const auto& inst = set.instance();
    std::vector<std::vector<Solution>> targets(1 + rng() % 4);
    for (auto& t : targets) {
      const auto k = 1 + rng() % 4;
      for (std::size_t q = 0; q < k; ++q) t.push_back(random_feasible(rng, inst));
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    for (auto method : {Method::center, Method::median}) {
      auto c = solve_coupled(inst, targets, method);
      EXPECT_EQ(c.cost, oracle::recovery_optimum(inst, targets, method == Method::center))
          << "trial " << trial;
      EXPECT_TRUE(is_feasible(inst, c.robust_solution));
      ASSERT_EQ(c.recovered.size(), targets.size());
      for (std::size_t j = 0; j < targets.size(); ++j)
        EXPECT_NE(std::find(targets[j].begin(), targets[j].end(), c.recovered[j]), targets[j].end());
      EXPECT_EQ(recovery_cost(method, c.robust_solution, c.recovered), c.cost);
    }
  }
}

TEST(SolveCoupled, TieBreaksToSmallestBitString) {
  // 001 and 100 both cost 0; 010 and 111 both cost 1
  auto c = solve_coupled(unit3(3), {{bits("001"), bits("100")}}, Method::center);
  EXPECT_EQ(c.cost, 0);
  EXPECT_EQ(c.robust_solution, bits("001"));
  auto d = solve_coupled(unit3(3), {{bits("110")}, {bits("011")}}, Method::center);
  EXPECT_EQ(d.cost, 1);
  EXPECT_EQ(d.robust_solution, bits("010"));
}

TEST(OptCoupling, SingleScenarioCostsNothing) {
  std::mt19937_64 rng(504);
  auto set = oracle::random_set(rng, 8, 1);
  const auto lam = LambdaVector::from_hundredths(30);
  for (auto s : {Scalarization::weighted_sum, Scalarization::chebyshev}) {
    auto sample = efficient_sample(set, {lam}, s);
    for (auto backend : {OptBackend::search, OptBackend::milp}) {
      RecEffConfig cfg;
      cfg.backend = backend;
      OptInput in{lam, 0, s, sample.reference, Rational(0)};
      EXPECT_EQ(solve_center_opt(set, in, sample.table, cfg).cost, 0);
      EXPECT_EQ(solve_median_opt(set, in, sample.table, cfg).cost, 0);
    }
  }
}

TEST(OptCoupling, MatchesEnumerationOracle) {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 12; ++trial) {
    auto set = oracle::random_set(rng, 10, 2);
    const auto h = oracle::ideal(set);
    const auto lam = LambdaVector::from_hundredths(static_cast<std::int64_t>(rng() % 101));
    for (bool ws : {true, false}) {
      const auto s = ws ? Scalarization::weighted_sum : Scalarization::chebyshev;
      const auto g = oracle_g(set, lam, ws, h);
      const auto table = table_of(g, 0, s);
      for (const auto& eps : {Rational(0), Rational(1, 100), Rational(1, 20)}) {
        std::vector<std::vector<Solution>> targets;
        for (std::size_t j = 0; j < 2; ++j)
          targets.push_back(
              oracle::admitted_set(set.instance(), set.scenario(j), ws, lam, g[j], eps, h));
        OptInput in{lam, 0, s, ReferencePoint{h}, eps};
        auto c = solve_center_opt(set, in, table);
        auto m = solve_median_opt(set, in, table);
        EXPECT_EQ(c.cost, oracle::recovery_optimum(set.instance(), targets, true)) << trial;
        EXPECT_EQ(m.cost, oracle::recovery_optimum(set.instance(), targets, false)) << trial;
        for (const auto* p : {&c, &m}) {
          ASSERT_TRUE(p->recovered.has_value());
          EXPECT_TRUE(is_feasible(set.instance(), p->robust_solution));
          for (std::size_t j = 0; j < 2; ++j) {
            const auto& y = (*p->recovered)[j];
            EXPECT_TRUE(is_feasible(set.instance(), y));
            EXPECT_TRUE(oracle::admitted(oracle::eval(set.scenario(j), y), ws, lam, g[j], eps, h));
          }
        }
      }
    }
  }
}

TEST(OptCoupling, MilpBackendAgreesWithSearch) {
  std::mt19937_64 rng(506);
  for (int trial = 0; trial < 16; ++trial) {
    auto set = oracle::random_set(rng, 4 + rng() % 3, 2);
    const auto lam = LambdaVector::from_hundredths(static_cast<std::int64_t>(rng() % 101));
    const auto s = trial % 2 ? Scalarization::weighted_sum : Scalarization::chebyshev;
    auto sample = efficient_sample(set, {lam}, s);
    const Rational eps = trial % 4 < 2 ? Rational(0) : Rational(1, 10);
    OptInput in{lam, 0, s, sample.reference, eps};
    RecEffConfig search, exact;
    exact.backend = OptBackend::milp;
    auto a = solve_center_opt(set, in, sample.table, search);
    auto b = solve_center_opt(set, in, sample.table, exact);
    EXPECT_EQ(a.cost, b.cost) << trial;
    auto c = solve_median_opt(set, in, sample.table, search);
    auto d = solve_median_opt(set, in, sample.table, exact);
    EXPECT_EQ(c.cost, d.cost) << trial;
    // the MILP's recovered solutions must satisfy the same admission test
    const auto h = sample.reference.values;
    for (const auto* p : {&b, &d})
      for (std::size_t j = 0; j < 2; ++j)
        EXPECT_TRUE(oracle::admitted(oracle::eval(set.scenario(j), (*p->recovered)[j]),
                                     s == Scalarization::weighted_sum, lam,
                                     sample.table.at(j, 0, s), eps, h));
  }
}

TEST(CoupledModel, Shape) {
  std::mt19937_64 rng(507);
  auto set = oracle::random_set(rng, 5, 3);
  const auto lam = LambdaVector::from_hundredths(40);
  auto sample = efficient_sample(set, {lam}, Scalarization::chebyshev);
  std::vector<std::int64_t> g{sample.table.at(0, 0, Scalarization::chebyshev),
                              sample.table.at(1, 0, Scalarization::chebyshev),
                              sample.table.at(2, 0, Scalarization::chebyshev)};
  auto center = coupled_model(set, lam, Scalarization::chebyshev, g, sample.reference, Rational(0),
                              Method::center);
  EXPECT_EQ(center.num_binary, 5u + 2 * 5 * 3);
  EXPECT_EQ(center.num_continuous, 1u);
  // knapsack rows 1 + 3, linearization 4 per (item, scenario), 3 distance
  // rows, 2 Chebyshev rows per scenario
  EXPECT_EQ(center.constraints.size(), 4u + 4 * 15 + 3 + 6);
  auto median = coupled_model(set, lam, Scalarization::weighted_sum, g, sample.reference,
                              Rational(0), Method::median);
  EXPECT_EQ(median.num_continuous, 0u);
  EXPECT_EQ(median.constraints.size(), 4u + 4 * 15 + 3);
}

TEST(RobustSet, MatchesEnumerationOracle) {
  std::mt19937_64 rng(508);
  auto set = oracle::random_set(rng, 12, 3);
  std::vector<LambdaVector> grid;
  for (std::int64_t k : {0, 25, 50, 75, 100}) grid.push_back(LambdaVector::from_hundredths(k));
  const auto h = oracle::ideal(set);
  for (bool ws : {true, false}) {
    const auto s = ws ? Scalarization::weighted_sum : Scalarization::chebyshev;
    for (auto method : {Method::center, Method::median}) {
      for (auto coupling : {Coupling::fixed, Coupling::opt}) {
        RecEffConfig cfg;
        cfg.method = method;
        cfg.coupling = coupling;
        cfg.scalarization = s;
        auto rs = generate_robust_set(set, grid, cfg);
        ASSERT_EQ(rs.points.size(), grid.size());
        for (std::size_t t = 0; t < grid.size(); ++t) {
          const auto& lam = grid[t];
          EXPECT_EQ(rs.points[t].lambda, lam);
          std::vector<std::vector<Solution>> targets;
          for (const auto& sc : set.scenarios()) {
            if (coupling == Coupling::fixed) {
              targets.push_back({ws ? oracle::weighted_sum(set.instance(), sc, lam).x
                                    : oracle::chebyshev(set.instance(), sc, lam, h).x});
            } else {
              const auto g = ws ? oracle::weighted_sum(set.instance(), sc, lam).scaled
                                : oracle::chebyshev(set.instance(), sc, lam, h).scaled;
              targets.push_back(oracle::admitted_set(set.instance(), sc, ws, lam, g, 0, h));
            }
          }
          EXPECT_EQ(rs.points[t].cost,
                    oracle::recovery_optimum(set.instance(), targets, method == Method::center))
              << to_string(s) << ' ' << to_string(method) << ' ' << to_string(coupling) << ' ' << t;
          EXPECT_EQ(rs.points[t].recovered.has_value(), coupling == Coupling::opt);
        }
      }
    }
  }
}

TEST(RobustSet, SingleScenarioFixedCostsNothing) {
  std::mt19937_64 rng(509);
  auto set = oracle::random_set(rng, 9, 1);
  std::vector<LambdaVector> grid;
  for (std::int64_t k = 0; k <= 100; k += 10) grid.push_back(LambdaVector::from_hundredths(k));
  for (auto method : {Method::center, Method::median}) {
    RecEffConfig cfg;
    cfg.method = method;
    auto rs = generate_robust_set(set, grid, cfg);
    EXPECT_EQ(total_recovery_cost(rs), 0);
  }
}

TEST(RobustSet, SingletonGridAndErrors) {
  std::mt19937_64 rng(510);
  auto set = oracle::random_set(rng, 8, 3);
  const auto lam = LambdaVector::from_hundredths(60);
  RecEffConfig cfg;
  cfg.method = Method::center;
  cfg.coupling = Coupling::opt;
  auto rs = generate_robust_set(set, {lam}, cfg);
  ASSERT_EQ(rs.points.size(), 1u);
  auto sample = efficient_sample(set, {lam}, cfg.scalarization);
  OptInput in{lam, 0, cfg.scalarization, sample.reference, Rational(0)};
  EXPECT_EQ(total_recovery_cost(rs), solve_center_opt(set, in, sample.table).cost);

  EXPECT_THROW(generate_robust_set(set, {}, cfg), StructuralError);
  cfg.epsilon = Rational(3, 2);
  EXPECT_THROW(generate_robust_set(set, {lam}, cfg), StructuralError);
  cfg.epsilon = Rational(1);
  cfg.target_limit = 1;
  try {
    generate_robust_set(set, {lam}, cfg);
    FAIL() << "expected a limit error";
  } catch (const milp::LimitError& e) {
    EXPECT_NE(std::string(e.what()).find("lambda=(0.60,0.40)"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("scenario 0"), std::string::npos) << e.what();
  }
}

TEST(RobustSet, CsvLayout) {
  std::mt19937_64 rng(511);
  auto set = oracle::random_set(rng, 6, 2);
  std::vector<LambdaVector> grid{LambdaVector::from_hundredths(0), LambdaVector::from_hundredths(7)};
  RecEffConfig cfg;
  std::ostringstream fixed;
  write_robust_csv(fixed, generate_robust_set(set, grid, cfg));
  std::istringstream in(fixed.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "lambda1,lambda2,cost,bits");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0.00,1.00,", 0), 0u) << line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("0.07,0.93,", 0), 0u) << line;

  cfg.coupling = Coupling::opt;
  cfg.epsilon = Rational(1, 200);
  std::ostringstream opt;
  write_robust_csv(opt, generate_robust_set(set, grid, cfg));
  EXPECT_EQ(opt.str().substr(0, opt.str().find('\n')),
            "lambda1,lambda2,cost,bits,recovered_bits_0,recovered_bits_1");
}

TEST(RobustSet, JobCountDoesNotChangeResults) {
  std::mt19937_64 rng(512);
  auto set = oracle::random_set(rng, 14, 3);
  std::vector<LambdaVector> grid;
  for (std::int64_t k = 0; k <= 100; k += 5) grid.push_back(LambdaVector::from_hundredths(k));
  RecEffConfig cfg;
  cfg.method = Method::center;
  cfg.coupling = Coupling::opt;
  cfg.scalarization = Scalarization::chebyshev;
  std::ostringstream a, b;
  write_robust_csv(a, generate_robust_set(set, grid, cfg));
  cfg.jobs = 4;
  write_robust_csv(b, generate_robust_set(set, grid, cfg));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Properties, OptCouplingNeverCostsMoreThanFixed) {
  std::mt19937_64 rng(513);
  std::vector<LambdaVector> grid;
  for (std::int64_t k = 0; k <= 100; k += 10) grid.push_back(LambdaVector::from_hundredths(k));
  for (int trial = 0; trial < 6; ++trial) {
    auto set = oracle::random_set(rng, 15, 3);
    for (auto s : {Scalarization::weighted_sum, Scalarization::chebyshev}) {
      auto sample = efficient_sample(set, grid, s);
      for (auto method : {Method::center, Method::median}) {
        RecEffConfig cfg;
        cfg.method = method;
        cfg.scalarization = s;
        auto fixed = generate_robust_set(set, grid, sample, cfg);
        cfg.coupling = Coupling::opt;
        auto opt = generate_robust_set(set, grid, sample, cfg);
        for (std::size_t t = 0; t < grid.size(); ++t)
          EXPECT_LE(opt.points[t].cost, fixed.points[t].cost);
      }
    }
  }
}

TEST(Properties, LargerToleranceNeverCostsMore) {
  std::mt19937_64 rng(514);
  std::vector<LambdaVector> grid;
  for (std::int64_t k = 0; k <= 100; k += 20) grid.push_back(LambdaVector::from_hundredths(k));
  for (int trial = 0; trial < 4; ++trial) {
    auto set = oracle::random_set(rng, 14, 3);
    for (auto s : {Scalarization::weighted_sum, Scalarization::chebyshev}) {
      auto sample = efficient_sample(set, grid, s);
      for (auto method : {Method::center, Method::median}) {
        std::vector<std::int64_t> prev(grid.size(), std::numeric_limits<std::int64_t>::max());
        for (std::int64_t k = 0; k <= 20; k += 4) {
          RecEffConfig cfg;
          cfg.method = method;
          cfg.coupling = Coupling::opt;
          cfg.scalarization = s;
          cfg.epsilon = Rational(k, 1000);
          auto rs = generate_robust_set(set, grid, sample, cfg);
          for (std::size_t t = 0; t < grid.size(); ++t) {
            EXPECT_LE(rs.points[t].cost, prev[t]);
            prev[t] = rs.points[t].cost;
          }
        }
      }
    }
  }
}

TEST(Properties, RecoveredSolutionsAreValid) {
  std::mt19937_64 rng(515);
  std::vector<LambdaVector> grid;
  for (std::int64_t k = 0; k <= 100; k += 25) grid.push_back(LambdaVector::from_hundredths(k));
  for (int trial = 0; trial < 4; ++trial) {
    auto set = oracle::random_set(rng, 16, 3);
    for (auto s : {Scalarization::weighted_sum, Scalarization::chebyshev}) {
      auto sample = efficient_sample(set, grid, s);
      RecEffConfig cfg;
      cfg.coupling = Coupling::opt;
      cfg.scalarization = s;
      cfg.epsilon = Rational(1, 100);
      for (auto method : {Method::center, Method::median}) {
        cfg.method = method;
        auto rs = generate_robust_set(set, grid, sample, cfg);
        for (std::size_t t = 0; t < grid.size(); ++t) {
          const auto& p = rs.points[t];
          EXPECT_TRUE(is_feasible(set.instance(), p.robust_solution));
          EXPECT_EQ(p.cost, recovery_cost(method, p.robust_solution, *p.recovered));
          for (std::size_t j = 0; j < set.num_scenarios(); ++j) {
            const auto& y = (*p.recovered)[j];
            EXPECT_TRUE(is_feasible(set.instance(), y));
            // independent rescoring of the scalarized value
            const auto f = oracle::eval(set.scenario(j), y);
            EXPECT_TRUE(oracle::admitted(f, s == Scalarization::weighted_sum, grid[t],
                                         sample.table.at(j, t, s), cfg.epsilon,
                                         sample.reference.values));
          }
        }
      }
    }
  }
}

TEST(Properties, CenterCostAtLeastHalfTheDiameter) {
  std::mt19937_64 rng(516);
  for (int trial = 0; trial < 30; ++trial) {
    auto set = oracle::random_set(rng, 6 + rng() % 12, 1);
    std::vector<Solution> pts;
    for (std::size_t k = 0, m = 2 + rng() % 4; k < m; ++k) pts.push_back(random_feasible(rng, set.instance()));
    std::int64_t diameter = 0;
    for (const auto& a : pts)
      for (const auto& b : pts) diameter = std::max(diameter, hamming(a, b));
    auto [x, cost] = solve_center_fixed(set.instance(), pts);
    EXPECT_GE(cost, (diameter + 1) / 2);
    EXPECT_TRUE(is_feasible(set.instance(), x));
  }
}

}  // namespace
}  // namespace receff
