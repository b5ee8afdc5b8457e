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

// Recovery-to-efficiency problems and robust-set generation.
//
// For every lambda the robust solution x minimizes the worst-case (center)
// or total (median) Hamming distance to one recovery target per scenario.
// With the fixed coupling the targets are the sampled scalarized optima.
// With the opt coupling each target may be any feasible solution whose
// scalarized value is within epsilon of that scenario's optimum, chosen
// jointly with x.
//
// Tie rules: the opt-coupling search returns the lexicographically smallest
// optimal x and, per scenario, the lexicographically smallest nearest target.
// The median DP returns the lexicographically smallest optimal x.

#ifndef RECEFF_RECEFF_HPP
#define RECEFF_RECEFF_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "receff/frontier.hpp"
#include "receff/milp.hpp"
#include "receff/model.hpp"
#include "receff/parallel.hpp"
#include "receff/rational.hpp"

namespace receff {

enum class Method { center, median };
enum class Coupling { fixed, opt };

/// How opt couplings are solved. `search` is the exact combinatorial search
/// below; `milp` solves the coupled model with milp::solve_exact.
enum class OptBackend { search, milp };

inline const char* to_string(Method m) { return m == Method::center ? "center" : "median"; }
inline const char* to_string(Coupling c) { return c == Coupling::fixed ? "fixed" : "opt"; }
inline const char* to_string(OptBackend b) { return b == OptBackend::search ? "search" : "milp"; }

struct RecEffConfig {
  Method method = Method::median;
  Coupling coupling = Coupling::fixed;
  /// ignored by the fixed coupling
  Rational epsilon{0};
  Scalarization scalarization = Scalarization::weighted_sum;
  OptBackend backend = OptBackend::search;
  milp::SolverConfig solver;
  /// cap on recovery targets enumerated per scenario by the search backend
  std::size_t target_limit = 2'000'000;
  std::size_t jobs = 1;
};

struct RobustPoint {
  LambdaVector lambda;
  Solution robust_solution;
  std::int64_t cost = 0;
  /// one per scenario; set iff the coupling is opt
  std::optional<std::vector<Solution>> recovered;
};

struct RobustSet {
  std::vector<RobustPoint> points;
  RecEffConfig config;
};

namespace detail {

// Points need not be feasible themselves; only x is constrained.
inline void check_points(const KnapsackInstance& instance, const std::vector<Solution>& points) {
  require(!points.empty(), "at least one point is required");
  for (const auto& p : points)
    require(p.size() == instance.num_items(), "point length differs from item count");
}

inline std::int64_t aggregate(Method method, const Solution& x, const std::vector<Solution>& targets) {
  std::int64_t out = 0;
  for (const auto& p : targets) {
    const auto d = hamming(x, p);
    out = method == Method::center ? std::max(out, d) : out + d;
  }
  return out;
}

inline std::int64_t ceil_div(wide_int a, wide_int b) {
  // b > 0, a >= 0
  return static_cast<std::int64_t>((a + b - 1) / b);
}

}  // namespace detail

/// Recovery cost of `x` against `targets`: max (center) or sum (median) of
/// Hamming distances.
inline std::int64_t recovery_cost(Method method, const Solution& x,
                                  const std::vector<Solution>& targets) {
  return detail::aggregate(method, x, targets);
}

/// min t s.t. d(x, p_j) <= t for all j, x in the knapsack.
inline milp::MilpModel center_fixed_model(const KnapsackInstance& instance,
                                          const std::vector<Solution>& points) {
  detail::check_points(instance, points);
  const auto l = instance.num_items();
  milp::MilpModel m(l, 1, milp::Sense::minimize);
  for (std::size_t i = 0; i < l; ++i) m.names[i] = "x" + std::to_string(i);
  m.names[l] = "t";
  m.objective[l] = 1;
  m.integral_objective = true;
  std::vector<std::pair<std::size_t, double>> cap;
  for (std::size_t i = 0; i < l; ++i) cap.emplace_back(i, static_cast<double>(instance.weight(i)));
  m.add(cap, milp::Relation::less_equal, static_cast<double>(instance.capacity()), "cap");
  for (std::size_t j = 0; j < points.size(); ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    double ones = 0;
    for (std::size_t i = 0; i < l; ++i) {
      const bool p = points[j].bits[i] != 0;
      terms.emplace_back(i, p ? -1.0 : 1.0);
      ones += p ? 1.0 : 0.0;
    }
    terms.emplace_back(l, -1.0);
    m.add(terms, milp::Relation::less_equal, -ones, "dist" + std::to_string(j));
  }
  return m;
}

/// min sum_j u_j s.t. d(x, p_j) <= u_j, x in the knapsack.
inline milp::MilpModel median_fixed_model(const KnapsackInstance& instance,
                                          const std::vector<Solution>& points) {
  detail::check_points(instance, points);
  const auto l = instance.num_items();
  const auto m = points.size();
  milp::MilpModel model(l, m, milp::Sense::minimize);
  for (std::size_t i = 0; i < l; ++i) model.names[i] = "x" + std::to_string(i);
  std::vector<std::pair<std::size_t, double>> cap;
  for (std::size_t i = 0; i < l; ++i) cap.emplace_back(i, static_cast<double>(instance.weight(i)));
  model.add(cap, milp::Relation::less_equal, static_cast<double>(instance.capacity()), "cap");
  for (std::size_t j = 0; j < m; ++j) {
    model.names[l + j] = "u" + std::to_string(j);
    model.objective[l + j] = 1;
    std::vector<std::pair<std::size_t, double>> terms;
    double ones = 0;
    for (std::size_t i = 0; i < l; ++i) {
      const bool p = points[j].bits[i] != 0;
      terms.emplace_back(i, p ? -1.0 : 1.0);
      ones += p ? 1.0 : 0.0;
    }
    terms.emplace_back(l + j, -1.0);
    model.add(terms, milp::Relation::less_equal, -ones, "dist" + std::to_string(j));
  }
  model.integral_objective = true;
  return model;
}

inline std::pair<Solution, std::int64_t> solve_center_fixed(const KnapsackInstance& instance,
                                                            const std::vector<Solution>& points,
                                                            const milp::SolverConfig& config = {}) {
  const auto model = center_fixed_model(instance, points);
  const auto s = milp::solve_exact(model, config);
  if (!s.optimal()) throw milp::SolverError("center model has no solution");
  Solution x(instance.num_items());
  for (std::size_t i = 0; i < x.size(); ++i) x.bits[i] = s.binary(i) ? 1 : 0;
  return {x, recovery_cost(Method::center, x, points)};
}

/// Total distance is sum_i b_i + sum_i x_i (m - 2 b_i) with b_i the number
/// of points containing item i, so the problem is a knapsack with profit
/// 2 b_i - m.
inline std::pair<Solution, std::int64_t> solve_median_fixed(const KnapsackInstance& instance,
                                                            const std::vector<Solution>& points) {
  detail::check_points(instance, points);
  const auto l = instance.num_items();
  const auto m = static_cast<std::int64_t>(points.size());
  std::vector<std::vector<std::int64_t>> keys(l, std::vector<std::int64_t>(1, 0));
  std::int64_t base = 0;
  for (std::size_t i = 0; i < l; ++i) {
    std::int64_t b = 0;
    for (const auto& p : points) b += p.bits[i];
    base += b;
    keys[i][0] = 2 * b - m;
  }
  auto [x, gain] = detail::lex_knapsack(instance, keys);
  return {x, base - gain[0]};
}

/// The per-scenario optimality condition of the opt coupling in integer
/// form, with lambda and g_opt scaled by the lambda denominator:
///   weighted sum  den_e * P(y) >= (den_e - num_e) * g_opt
///   Chebyshev     den_e * lambda_i (h_i - f_i(y)) <= (den_e + num_e) * g_opt
struct OptimalityBound {
  Scalarization method = Scalarization::weighted_sum;
  LambdaVector lambda;
  std::int64_t g_opt = 0;
  Rational epsilon{0};
  ReferencePoint reference;

  bool admits(const ObjectiveVector& f) const {
    using detail::wide_int;
    const wide_int den = epsilon.den, num = epsilon.num;
    if (method == Scalarization::weighted_sum) {
      wide_int p = 0;
      for (std::size_t i = 0; i < f.size(); ++i) p += static_cast<wide_int>(lambda.numerator(i)) * f[i];
      return den * p >= (den - num) * g_opt;
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      const wide_int lhs = den * lambda.numerator(i) * (reference.values[i] - f[i]);
      if (lhs > (den + num) * g_opt) return false;
    }
    return true;
  }
};

/// Every feasible solution admitted by `bound`, in lexicographic order.
/// Throws milp::LimitError when more than `limit` exist.
inline std::vector<Solution> recovery_targets(const KnapsackInstance& instance,
                                              const ScenarioCosts& scenario,
                                              const OptimalityBound& bound,
                                              std::size_t limit = 2'000'000) {
  using detail::wide_int;
  detail::check_lambda(scenario, bound.lambda);
  detail::require(bound.epsilon >= Rational(0) && bound.epsilon <= Rational(1),
                  "epsilon must lie in [0, 1]");
  const auto l = instance.num_items();
  const auto n = scenario.num_objectives();
  const auto cap = static_cast<std::size_t>(instance.capacity());
  const auto width = cap + 1;

  // linear criteria with lower thresholds: sum_j a_kj y_j >= t_k
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> thresholds;
  const wide_int den = bound.epsilon.den, num = bound.epsilon.num;
  if (bound.method == Scalarization::weighted_sum) {
    std::vector<std::int64_t> a(l, 0);
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t i = 0; i < n; ++i) a[j] += bound.lambda.numerator(i) * scenario.cost(i, j);
    rows.push_back(std::move(a));
    thresholds.push_back(detail::ceil_div((den - num) * bound.g_opt, den));
  } else {
    detail::require(bound.reference.values.size() == n, "reference point dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (bound.lambda.numerator(i) == 0) continue;
      const auto slack = static_cast<std::int64_t>((den + num) * bound.g_opt /
                                                   (den * bound.lambda.numerator(i)));
      rows.push_back(scenario.row(i));
      thresholds.push_back(bound.reference.values[i] - slack);
    }
  }

  // best[k][j * width + c]: max of row k over items j.. within capacity c
  std::vector<std::vector<std::int64_t>> best(rows.size(),
                                              std::vector<std::int64_t>((l + 1) * width, 0));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto& b = best[k];
    for (std::size_t j = l; j-- > 0;) {
      const auto w = static_cast<std::size_t>(instance.weight(j));
      for (std::size_t c = 0; c <= cap; ++c) {
        auto v = b[(j + 1) * width + c];
        if (w <= c) v = std::max(v, b[(j + 1) * width + c - w] + rows[k][j]);
        b[j * width + c] = v;
      }
    }
  }

  std::vector<Solution> out;
  Solution y(l);
  std::vector<std::int64_t> acc(rows.size(), 0);
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t j, std::size_t room) {
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (acc[k] + best[k][j * width + room] < thresholds[k]) return;
    if (j == l) {
      if (out.size() == limit)
        throw milp::LimitError("more than " + std::to_string(limit) + " recovery targets");
      out.push_back(y);
      return;
    }
    dfs(j + 1, room);
    const auto w = static_cast<std::size_t>(instance.weight(j));
    if (w <= room) {
      y.bits[j] = 1;
      for (std::size_t k = 0; k < rows.size(); ++k) acc[k] += rows[k][j];
      dfs(j + 1, room - w);
      for (std::size_t k = 0; k < rows.size(); ++k) acc[k] -= rows[k][j];
      y.bits[j] = 0;
    }
  };
  // the thresholds are necessary; admits() is the exact test
  std::vector<Solution> candidates;
  dfs(0, cap);
  for (auto& s : out)
    if (bound.admits(evaluate(scenario, s))) candidates.push_back(std::move(s));
  return candidates;
}

/// Result of a coupled solve: x, its cost, and one chosen target per scenario.
struct CoupledSolution {
  Solution robust_solution;
  std::int64_t cost = 0;
  std::vector<Solution> recovered;
};

namespace detail {

struct PackedSet {
  std::size_t words = 0;
  std::vector<std::uint64_t> data;  // size() * words

  std::size_t size() const { return words ? data.size() / words : 0; }
  const std::uint64_t* at(std::size_t k) const { return data.data() + k * words; }
};

inline void pack_into(const Solution& s, std::size_t words, std::vector<std::uint64_t>& out) {
  const auto start = out.size();
  out.resize(start + words, 0);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.bits[i]) out[start + i / 64] |= std::uint64_t{1} << (i % 64);
}

inline std::int64_t packed_distance(const std::uint64_t* a, const std::uint64_t* b,
                                    std::size_t words) {
  std::int64_t d = 0;
  for (std::size_t k = 0; k < words; ++k) d += std::popcount(a[k] ^ b[k]);
  return d;
}

}  // namespace detail

/// Exact minimization of max_j (center) or sum_j (median) of
/// min_{y in targets[j]} d(x, y) over feasible x.
///
/// Every x lies at some distance r from the union of the target sets (from
/// the smallest set for center), and any such x costs at least r (center)
/// or m r (median). Candidates are enumerated shell by shell around those
/// targets until the shell bound exceeds the incumbent.
inline CoupledSolution solve_coupled(const KnapsackInstance& instance,
                                     const std::vector<std::vector<Solution>>& targets,
                                     Method method) {
  const auto l = instance.num_items();
  const auto m = targets.size();
  detail::require(m > 0, "solve_coupled: no scenarios");
  for (std::size_t j = 0; j < m; ++j) {
    if (targets[j].empty())
      throw milp::SolverError("solve_coupled: scenario " + std::to_string(j) +
                              " has no recovery target");
    for (const auto& y : targets[j])
      detail::require(y.size() == l && is_feasible(instance, y),
                      "solve_coupled: infeasible recovery target");
  }
  const std::size_t words = std::max<std::size_t>(1, (l + 63) / 64);
  std::vector<detail::PackedSet> packed(m);
  for (std::size_t j = 0; j < m; ++j) {
    packed[j].words = words;
    for (const auto& y : targets[j]) detail::pack_into(y, words, packed[j].data);
  }

  // shell centres
  std::vector<Solution> centres;
  if (method == Method::center) {
    std::size_t a = 0;
    for (std::size_t j = 1; j < m; ++j)
      if (targets[j].size() < targets[a].size()) a = j;
    centres = targets[a];
  } else {
    for (const auto& t : targets) centres.insert(centres.end(), t.begin(), t.end());
    std::sort(centres.begin(), centres.end());
    centres.erase(std::unique(centres.begin(), centres.end()), centres.end());
  }
  const std::int64_t shell_factor = method == Method::center ? 1 : static_cast<std::int64_t>(m);

  constexpr auto kNone = std::numeric_limits<std::int64_t>::max();
  std::int64_t best = kNone;
  Solution best_x;
  std::vector<std::uint64_t> xp;

  // cost of x, or kNone once it provably exceeds `best`
  auto cost_of = [&](const Solution& x) {
    xp.clear();
    detail::pack_into(x, words, xp);
    std::int64_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      std::int64_t dmin = kNone;
      for (std::size_t k = 0; k < packed[j].size() && dmin > 0; ++k)
        dmin = std::min(dmin, detail::packed_distance(xp.data(), packed[j].at(k), words));
      total = method == Method::center ? std::max(total, dmin) : total + dmin;
      if (total > best) return kNone;
    }
    return total;
  };

  Solution x(l);
  std::vector<std::size_t> flips;
  for (std::int64_t r = 0; r <= static_cast<std::int64_t>(l); ++r) {
    if (best != kNone && shell_factor * r > best) break;
    const auto rr = static_cast<std::size_t>(r);
    for (const auto& c : centres) {
      const auto base_weight = total_weight(instance, c);
      flips.resize(rr);
      for (std::size_t k = 0; k < rr; ++k) flips[k] = k;
      while (true) {
        std::int64_t w = base_weight;
        x = c;
        for (auto f : flips) {
          x.bits[f] ^= 1;
          w += x.bits[f] ? instance.weight(f) : -instance.weight(f);
        }
        if (w <= instance.capacity()) {
          const auto v = cost_of(x);
          if (v != kNone && (v < best || (v == best && x < best_x))) {
            best = v;
            best_x = x;
          }
        }
        // next combination of rr positions out of l
        std::size_t k = rr;
        while (k > 0 && flips[k - 1] == l - rr + k - 1) --k;
        if (k == 0) break;
        ++flips[k - 1];
        for (std::size_t q = k; q < rr; ++q) flips[q] = flips[q - 1] + 1;
      }
    }
  }

  CoupledSolution out;
  out.robust_solution = best_x;
  out.cost = best;
  for (std::size_t j = 0; j < m; ++j) {
    const Solution* pick = nullptr;
    std::int64_t dmin = kNone;
    for (const auto& y : targets[j]) {
      const auto d = hamming(best_x, y);
      if (d < dmin) {
        dmin = d;
        pick = &y;
      }
    }
    out.recovered.push_back(*pick);
  }
  return out;
}

/// The coupled model of the opt coupling: binaries x_i, y_ji and z_ji with
/// z_ji = |x_i - y_ji|, knapsack rows on x and every y_j, one optimality row
/// set per scenario, and objective min t with sum_i z_ji <= t (center) or
/// min sum_ji z_ji (median). `g_opt[j]` is scaled by the lambda denominator.
inline milp::MilpModel coupled_model(const ScenarioSet& set, const LambdaVector& lambda,
                                     Scalarization scalarization,
                                     const std::vector<std::int64_t>& g_opt,
                                     const ReferencePoint& reference, const Rational& epsilon,
                                     Method method) {
  const auto l = set.num_items();
  const auto m = set.num_scenarios();
  const auto n = set.num_objectives();
  detail::require(g_opt.size() == m, "coupled_model: one optimal value per scenario required");
  detail::require(lambda.size() == n, "coupled_model: lambda size differs from objective count");
  detail::require(epsilon >= Rational(0) && epsilon <= Rational(1), "epsilon must lie in [0, 1]");
  const bool center = method == Method::center;
  const std::size_t nb = l + 2 * l * m;
  milp::MilpModel model(nb, center ? 1 : 0, milp::Sense::minimize);
  model.integral_objective = true;
  auto y = [&](std::size_t j, std::size_t i) { return l + j * l + i; };
  auto z = [&](std::size_t j, std::size_t i) { return l + l * m + j * l + i; };
  for (std::size_t i = 0; i < l; ++i) model.names[i] = "x" + std::to_string(i);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < l; ++i) {
      model.names[y(j, i)] = "y" + std::to_string(j) + "_" + std::to_string(i);
      model.names[z(j, i)] = "z" + std::to_string(j) + "_" + std::to_string(i);
    }
  if (center) {
    model.names[nb] = "t";
    model.objective[nb] = 1;
  } else {
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < l; ++i) model.objective[z(j, i)] = 1;
  }

  using milp::Relation;
  const auto W = static_cast<double>(set.instance().capacity());
  std::vector<std::pair<std::size_t, double>> row;
  for (std::size_t i = 0; i < l; ++i) row.emplace_back(i, static_cast<double>(set.instance().weight(i)));
  model.add(row, Relation::less_equal, W, "cap_x");
  const auto den = epsilon.den, num = epsilon.num;
  for (std::size_t j = 0; j < m; ++j) {
    const auto js = std::to_string(j);
    const auto& sc = set.scenario(j);
    row.clear();
    for (std::size_t i = 0; i < l; ++i)
      row.emplace_back(y(j, i), static_cast<double>(set.instance().weight(i)));
    model.add(row, Relation::less_equal, W, "cap_" + js);
    for (std::size_t i = 0; i < l; ++i) {
      const auto is = js + "_" + std::to_string(i);
      const auto xi = i, yi = y(j, i), zi = z(j, i);
      model.add({{zi, 1}, {xi, -1}, {yi, 1}}, Relation::greater_equal, 0, "za" + is);
      model.add({{zi, 1}, {xi, 1}, {yi, -1}}, Relation::greater_equal, 0, "zb" + is);
      model.add({{zi, 1}, {xi, -1}, {yi, -1}}, Relation::less_equal, 0, "zc" + is);
      model.add({{zi, 1}, {xi, 1}, {yi, 1}}, Relation::less_equal, 2, "zd" + is);
    }
    if (center) {
      row.clear();
      for (std::size_t i = 0; i < l; ++i) row.emplace_back(z(j, i), 1.0);
      row.emplace_back(nb, -1.0);
      model.add(row, Relation::less_equal, 0, "dist" + js);
    }
    if (scalarization == Scalarization::weighted_sum) {
      row.clear();
      for (std::size_t i = 0; i < l; ++i) {
        std::int64_t p = 0;
        for (std::size_t k = 0; k < n; ++k) p += lambda.numerator(k) * sc.cost(k, i);
        row.emplace_back(y(j, i), static_cast<double>(den * p));
      }
      model.add(row, Relation::greater_equal, static_cast<double>((den - num) * g_opt[j]),
                "opt" + js);
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const auto lk = lambda.numerator(k);
        if (lk == 0) continue;
        row.clear();
        for (std::size_t i = 0; i < l; ++i)
          row.emplace_back(y(j, i), static_cast<double>(-den * lk * sc.cost(k, i)));
        model.add(row, Relation::less_equal,
                  static_cast<double>((den + num) * g_opt[j] - den * lk * reference.values[k]),
                  "opt" + js + "_" + std::to_string(k));
      }
    }
  }
  return model;
}

struct OptInput {
  LambdaVector lambda;
  std::size_t lambda_index = 0;
  Scalarization scalarization = Scalarization::weighted_sum;
  /// required for Chebyshev
  ReferencePoint reference;
  Rational epsilon{0};
};

namespace detail {

inline std::vector<std::int64_t> optimal_values(const ScenarioSet& set, const OptInput& in,
                                                const OptimalValueTable& table) {
  std::vector<std::int64_t> g(set.num_scenarios());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = table.at(j, in.lambda_index, in.scalarization);
  return g;
}

inline RobustPoint solve_opt(const ScenarioSet& set, const OptInput& in,
                             const OptimalValueTable& table, Method method,
                             const RecEffConfig& config) {
  const auto g = optimal_values(set, in, table);
  RobustPoint point{in.lambda, Solution{}, 0, std::nullopt};
  if (config.backend == OptBackend::milp) {
    const auto model = coupled_model(set, in.lambda, in.scalarization, g, in.reference, in.epsilon, method);
    const auto s = milp::solve_exact(model, config.solver);
    if (!s.optimal()) throw milp::SolverError("coupled model has no solution");
    const auto l = set.num_items();
    Solution x(l);
    for (std::size_t i = 0; i < l; ++i) x.bits[i] = s.binary(i) ? 1 : 0;
    std::vector<Solution> rec(set.num_scenarios(), Solution(l));
    for (std::size_t j = 0; j < rec.size(); ++j)
      for (std::size_t i = 0; i < l; ++i) rec[j].bits[i] = s.binary(l + j * l + i) ? 1 : 0;
    point.robust_solution = x;
    point.cost = recovery_cost(method, x, rec);
    point.recovered = std::move(rec);
    return point;
  }
  std::vector<std::vector<Solution>> targets(set.num_scenarios());
  for (std::size_t j = 0; j < targets.size(); ++j) {
    OptimalityBound b{in.scalarization, in.lambda, g[j], in.epsilon, in.reference};
    try {
      targets[j] = recovery_targets(set.instance(), set.scenario(j), b, config.target_limit);
    } catch (const milp::LimitError& e) {
      throw milp::LimitError("scenario " + std::to_string(j) + ": " + e.what());
    }
  }
  auto c = solve_coupled(set.instance(), targets, method);
  point.robust_solution = std::move(c.robust_solution);
  point.cost = c.cost;
  point.recovered = std::move(c.recovered);
  return point;
}

}  // namespace detail

inline RobustPoint solve_center_opt(const ScenarioSet& set, const OptInput& in,
                                    const OptimalValueTable& table, const RecEffConfig& config = {}) {
  return detail::solve_opt(set, in, table, Method::center, config);
}

inline RobustPoint solve_median_opt(const ScenarioSet& set, const OptInput& in,
                                    const OptimalValueTable& table, const RecEffConfig& config = {}) {
  return detail::solve_opt(set, in, table, Method::median, config);
}

inline std::string lambda_label(const LambdaVector& lambda) {
  std::string s = "lambda=(";
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (i) s += ',';
    s += lambda.component_string(i);
  }
  return s + ")";
}

/// One robust point per lambda, in grid order, from a sample computed for
/// the same grid and scalarization.
inline RobustSet generate_robust_set(const ScenarioSet& set, const std::vector<LambdaVector>& lambdas,
                                     const EfficientSample& sample, const RecEffConfig& config) {
  detail::require(!lambdas.empty(), "generate_robust_set: empty lambda grid");
  detail::require(config.epsilon >= Rational(0) && config.epsilon <= Rational(1),
                  "epsilon must lie in [0, 1]");
  detail::require(sample.method == config.scalarization,
                  "generate_robust_set: sample scalarization differs from config");
  detail::require(sample.cells.size() == set.num_scenarios() &&
                      sample.cells.front().size() == lambdas.size(),
                  "generate_robust_set: sample shape differs from inputs");
  std::vector<std::optional<RobustPoint>> points(lambdas.size());
  parallel_for(lambdas.size(), config.jobs, [&](std::size_t t) {
    const auto ctx = lambda_label(lambdas[t]) + ": ";
    try {
      if (config.coupling == Coupling::fixed) {
        std::vector<Solution> pts;
        for (std::size_t j = 0; j < set.num_scenarios(); ++j) pts.push_back(sample.solution(j, t));
        auto [x, cost] = config.method == Method::center
                             ? solve_center_fixed(set.instance(), pts, config.solver)
                             : solve_median_fixed(set.instance(), pts);
        points[t] = RobustPoint{lambdas[t], std::move(x), cost, std::nullopt};
      } else {
        OptInput in{lambdas[t], t, config.scalarization, sample.reference, config.epsilon};
        points[t] = config.method == Method::center
                            ? solve_center_opt(set, in, sample.table, config)
                            : solve_median_opt(set, in, sample.table, config);
      }
    } catch (const milp::LimitError& e) {
      throw milp::LimitError(ctx + e.what());
    } catch (const milp::SolverError& e) {
      throw milp::SolverError(ctx + e.what());
    } catch (const PreconditionError& e) {
      throw PreconditionError(ctx + e.what());
    } catch (const StructuralError& e) {
      throw StructuralError(ctx + e.what());
    }
  });
  RobustSet out;
  out.config = config;
  for (auto& p : points) out.points.push_back(std::move(*p));
  return out;
}

inline RobustSet generate_robust_set(const ScenarioSet& set, const std::vector<LambdaVector>& lambdas,
                                     const RecEffConfig& config) {
  detail::require(!lambdas.empty(), "generate_robust_set: empty lambda grid");
  return generate_robust_set(set, lambdas,
                             efficient_sample(set, lambdas, config.scalarization, config.jobs), config);
}

inline std::int64_t total_recovery_cost(const RobustSet& rs) {
  std::int64_t total = 0;
  for (const auto& p : rs.points) total += p.cost;
  return total;
}

/// CSV: lambda1,lambda2,cost,bits[,recovered_bits_0,...]
inline void write_robust_csv(std::ostream& out, const RobustSet& rs) {
  out << "lambda1,lambda2,cost,bits";
  const bool with_rec = !rs.points.empty() && rs.points.front().recovered.has_value();
  if (with_rec)
    for (std::size_t j = 0; j < rs.points.front().recovered->size(); ++j) out << ",recovered_bits_" << j;
  out << '\n';
  for (const auto& p : rs.points) {
    out << p.lambda.component_string(0) << ',' << p.lambda.component_string(1) << ',' << p.cost
        << ',' << p.robust_solution.to_string();
    if (p.recovered)
      for (const auto& y : *p.recovered) out << ',' << y.to_string();
    out << '\n';
  }
}

}  // namespace receff

#endif  // RECEFF_RECEFF_HPP
