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

#include <algorithm>
#include <numeric>
#include <random>

#include "milp_models.hpp"
#include "receff/milp.hpp"

namespace receff::milp {
namespace {

TEST(SolveExact, TwoBinariesSharingACapacity) {
  MilpModel m(2, 0, Sense::maximize);
  m.objective = {1, 1};
  m.add({{0, 1}, {1, 1}}, Relation::less_equal, 1);
  auto s = solve_exact(m);
  ASSERT_TRUE(s.optimal());
  EXPECT_DOUBLE_EQ(s.objective_value, 1.0);
  EXPECT_TRUE(satisfies(m, s.assignment));
}

TEST(SolveExact, ContradictoryBoundsAreInfeasible) {
  MilpModel m(1, 0);
  m.objective = {1};
  m.add({{0, 1}}, Relation::greater_equal, 1);
  m.add({{0, 1}}, Relation::less_equal, 0);
  EXPECT_EQ(solve_exact(m).status, Status::infeasible);
  EXPECT_EQ(brute_force(m).status, Status::infeasible);
}

TEST(BruteForce, EmptyAndSingleBinaryModels) {
  MilpModel empty(0, 0);
  auto s = brute_force(empty);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, 0.0);
  s = solve_exact(empty);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, 0.0);

  MilpModel one(1, 0, Sense::maximize);
  one.objective = {5};
  s = brute_force(one);
  ASSERT_TRUE(s.optimal());
  EXPECT_EQ(s.objective_value, 5.0);
  EXPECT_TRUE(s.binary(0));
}

TEST(BruteForce, RefusesLargeModels) {
  MilpModel m(26, 0);
  EXPECT_THROW(brute_force(m), PreconditionError);
}

TEST(BruteForce, RejectsCoupledContinuousRows) {
  MilpModel m(1, 2);
  m.objective = {0, 1, 1};
  m.add({{1, 1}, {2, 1}}, Relation::greater_equal, 1);
  EXPECT_THROW(brute_force(m), UnsupportedError);
}

TEST(Validate, RejectsMalformedModels) {
  MilpModel m(2, 1);
  m.objective = {1, 0.5, 0};
  EXPECT_THROW(solve_exact(m), StructuralError);
  MilpModel n(2, 1);
  n.constraints.push_back({{1, 1}, Relation::less_equal, 1, "short"});
  EXPECT_THROW(solve_exact(n), StructuralError);
  MilpModel o(1, 1);
  o.lower[0] = -kInfinity;
  EXPECT_THROW(solve_exact(o), StructuralError);
}

TEST(SolveExact, NodeLimitIsAnError) {
  // parity-style model whose relaxation stays fractional at the root
  MilpModel m(6, 0, Sense::maximize);
  std::vector<std::pair<std::size_t, double>> terms;
  for (std::size_t k = 0; k < 6; ++k) {
    m.objective[k] = 1;
    terms.emplace_back(k, 2);
  }
  m.add(terms, Relation::less_equal, 7);
  SolverConfig cfg;
  cfg.node_limit = 1;
  EXPECT_THROW(solve_exact(m, cfg), LimitError);
  auto s = solve_exact(m);
  ASSERT_TRUE(s.optimal());
  EXPECT_DOUBLE_EQ(s.objective_value, 3.0);
}

TEST(SolveExact, CenterStyleContinuousVariable) {
  // min t s.t. t >= d(x, 000), t >= d(x, 111) for x in {0,1}^3
  MilpModel m(3, 1);
  m.objective = {0, 0, 0, 1};
  m.add({{0, 1}, {1, 1}, {2, 1}, {3, -1}}, Relation::less_equal, 0);
  m.add({{0, -1}, {1, -1}, {2, -1}, {3, -1}}, Relation::less_equal, -3);
  auto s = solve_exact(m);
  ASSERT_TRUE(s.optimal());
  EXPECT_NEAR(s.objective_value, 2.0, 1e-9);
  auto b = brute_force(m);
  ASSERT_TRUE(b.optimal());
  EXPECT_NEAR(b.objective_value, 2.0, 1e-9);
}

TEST(Properties, MatchesBruteForceOnRandomModels) {
  std::mt19937_64 rng(9001);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 250; ++trial) {
    auto m = testing::random_model(rng);
    auto b = brute_force(m);
    auto s = solve_exact(m);
    ASSERT_EQ(s.status, b.status) << "trial " << trial;
    if (b.optimal()) {
      ++optimal;
      EXPECT_NEAR(s.objective_value, b.objective_value, 1e-6) << "trial " << trial;
      EXPECT_TRUE(satisfies(m, s.assignment)) << "trial " << trial;
      EXPECT_TRUE(satisfies(m, b.assignment)) << "trial " << trial;
      EXPECT_NEAR(objective_of(m, s.assignment), s.objective_value, 1e-6);
    } else {
      ++infeasible;
    }
  }
  // the generator must exercise both outcomes
  EXPECT_GT(optimal, 100);
  EXPECT_GT(infeasible, 0);
}

MilpModel permuted(const MilpModel& m, const std::vector<std::size_t>& perm) {
  // perm maps new index -> old index; binaries stay before continuous
  MilpModel p(m.num_binary, m.num_continuous, m.sense);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    p.objective[k] = m.objective[perm[k]];
    p.names[k] = m.names[perm[k]];
  }
  for (std::size_t k = 0; k < m.num_continuous; ++k) {
    p.lower[k] = m.lower[perm[m.num_binary + k] - m.num_binary];
    p.upper[k] = m.upper[perm[m.num_binary + k] - m.num_binary];
  }
  for (const auto& c : m.constraints) {
    Constraint q = c;
    for (std::size_t k = 0; k < perm.size(); ++k) q.coefficients[k] = c.coefficients[perm[k]];
    p.constraints.push_back(q);
  }
  return p;
}

TEST(Properties, ObjectiveInvariantUnderVariableReordering) {
  std::mt19937_64 rng(9002);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = testing::random_model(rng, 14);
    std::vector<std::size_t> perm(m.num_variables());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m.num_binary), rng);
    std::shuffle(perm.begin() + static_cast<std::ptrdiff_t>(m.num_binary), perm.end(), rng);
    auto a = solve_exact(m);
    auto b = solve_exact(permuted(m, perm));
    ASSERT_EQ(a.status, b.status);
    if (a.optimal()) {
      EXPECT_NEAR(a.objective_value, b.objective_value, 1e-6);
    }
  }
}

TEST(Properties, ObjectiveScalingPreservesOptima) {
  std::mt19937_64 rng(9003);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = testing::random_model(rng, 14);
    const double factor = static_cast<double>(2 + rng() % 50);
    auto scaled = m;
    for (auto& c : scaled.objective) c *= factor;
    auto a = solve_exact(m);
    auto b = solve_exact(scaled);
    ASSERT_EQ(a.status, b.status);
    if (!a.optimal()) continue;
    EXPECT_NEAR(b.objective_value, factor * a.objective_value, 1e-6 * factor);
    // the scaled model's assignment must be optimal for the original model
    EXPECT_NEAR(objective_of(m, b.assignment), a.objective_value, 1e-6);
  }
}

}  // namespace
}  // namespace receff::milp
