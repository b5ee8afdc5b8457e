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

// Exact per-scenario efficient sets and scalarized subproblems.
//
// Every optimization here is in integer arithmetic. Scalarized values are
// kept scaled by the lambda denominator (hundredths on the standard grid).
//
// Tie rule shared by all scalarized solves: among optimal solutions prefer
// the lexicographically largest objective vector, then the lexicographically
// smallest bit string. Both DPs below process items from last to first and
// prefer "item not taken" on equal keys, which yields the smallest bit
// string among the candidates for a given value.

#ifndef RECEFF_FRONTIER_HPP
#define RECEFF_FRONTIER_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "receff/model.hpp"
#include "receff/parallel.hpp"
#include "receff/rational.hpp"

namespace receff {

enum class Scalarization { weighted_sum, chebyshev };

inline const char* to_string(Scalarization s) {
  return s == Scalarization::weighted_sum ? "ws" : "cheb";
}

struct FrontEntry {
  ObjectiveVector values;
  Solution solution;
};

/// Nondominated points of one scenario, sorted by the first objective
/// ascending (so the second objective strictly decreases).
struct NondominatedFront {
  std::vector<FrontEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

/// Per objective, the best single-objective value over all scenarios.
struct ReferencePoint {
  std::vector<std::int64_t> values;
  friend bool operator==(const ReferencePoint&, const ReferencePoint&) = default;
};

/// Outcome of one scalarized subproblem P(xi, lambda).
struct ScalarizedResult {
  Solution solution;
  ObjectiveVector values;
  /// optimal scalarized value times `scale`
  std::int64_t scaled_value = 0;
  std::int64_t scale = 1;

  Rational value() const { return Rational(scaled_value, scale); }
};

namespace detail {

/// 0-1 knapsack maximizing the lexicographic sum of per-item key vectors.
/// Returns the lexicographically smallest bit string among the maximizers.
inline std::pair<Solution, std::vector<std::int64_t>> lex_knapsack(
    const KnapsackInstance& instance, const std::vector<std::vector<std::int64_t>>& keys) {
  const auto l = instance.num_items();
  require(keys.size() == l, "lex_knapsack: one key vector per item required");
  const auto k = keys.front().size();
  const auto cap = static_cast<std::size_t>(instance.capacity());
  const auto width = cap + 1;
  std::vector<std::int64_t> value(width * k, 0);
  std::vector<std::uint8_t> take(l * width, 0);
  std::vector<std::int64_t> cand(k);

  for (std::size_t jj = l; jj-- > 0;) {
    const auto w = static_cast<std::size_t>(instance.weight(jj));
    if (w > cap) continue;
    const auto& key = keys[jj];
    for (std::size_t c = cap + 1; c-- > w;) {
      const auto* base = &value[(c - w) * k];
      auto* here = &value[c * k];
      bool better = false;
      for (std::size_t t = 0; t < k; ++t) {
        cand[t] = base[t] + key[t];
      }
      for (std::size_t t = 0; t < k; ++t) {
        if (cand[t] != here[t]) {
          better = cand[t] > here[t];
          break;
        }
      }
      if (better) {
        std::copy(cand.begin(), cand.end(), here);
        take[jj * width + c] = 1;
      }
    }
  }

  Solution x(l);
  std::size_t c = cap;
  for (std::size_t j = 0; j < l; ++j) {
    if (take[j * width + c]) {
      x.bits[j] = 1;
      c -= static_cast<std::size_t>(instance.weight(j));
    }
  }
  return {std::move(x), std::vector<std::int64_t>(value.begin() + static_cast<std::ptrdiff_t>(cap * k),
                                                  value.begin() + static_cast<std::ptrdiff_t>(width * k))};
}

/// Maximum of sum profit_j x_j over the knapsack; value only.
inline std::int64_t knapsack_max(const KnapsackInstance& instance,
                                 const std::vector<std::int64_t>& profit) {
  const auto cap = static_cast<std::size_t>(instance.capacity());
  std::vector<std::int64_t> best(cap + 1, 0);
  for (std::size_t j = 0; j < instance.num_items(); ++j) {
    const auto w = static_cast<std::size_t>(instance.weight(j));
    if (w > cap || profit[j] <= 0) continue;
    for (std::size_t c = cap + 1; c-- > w;) best[c] = std::max(best[c], best[c - w] + profit[j]);
  }
  return best[cap];
}

inline void check_lambda(const ScenarioCosts& scenario, const LambdaVector& lambda) {
  require(lambda.size() == scenario.num_objectives(), "lambda size differs from objective count");
}

}  // namespace detail

/// Exact nondominated set for a bi-objective scenario.
///
/// Labels (weight, f1, f2) over growing item suffixes are pruned when another
/// label is no heavier and either strictly better in the objectives or equal
/// and lexicographically smaller. Each label links to its predecessor so the
/// representative solution can be rebuilt.
inline NondominatedFront pareto_front(const KnapsackInstance& instance,
                                      const ScenarioCosts& scenario) {
  if (scenario.num_objectives() != 2)
    throw UnsupportedError("pareto_front: only two objectives are supported");
  detail::require(scenario.num_items() == instance.num_items(),
                  "pareto_front: scenario item count differs from instance");

  struct Node {
    std::int32_t parent;
    std::int32_t item;
  };
  struct Label {
    std::int64_t w, f1, f2;
    std::int32_t node;  // -1 while still a candidate extension
    std::int32_t from;  // source label for extensions
  };

  const auto l = instance.num_items();
  const auto cap = instance.capacity();
  std::vector<Node> nodes{{-1, -1}};
  std::vector<Label> labels{{0, 0, 0, 0, -1}};
  std::vector<Label> cand;
  std::vector<std::size_t> order;
  std::vector<std::uint8_t> keep;
  std::map<std::int64_t, std::int64_t> stair;  // f1 -> f2, f2 decreasing in f1
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> best_rank;

  for (std::size_t jj = l; jj-- > 0;) {
    const auto w = instance.weight(jj);
    const auto c1 = scenario.cost(0, jj);
    const auto c2 = scenario.cost(1, jj);
    cand = labels;  // rank order: all "not taken" first
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto& a = labels[i];
      if (a.w + w <= cap)
        cand.push_back({a.w + w, a.f1 + c1, a.f2 + c2, -1, static_cast<std::int32_t>(i)});
    }
    order.resize(cand.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& x = cand[a];
      const auto& y = cand[b];
      if (x.w != y.w) return x.w < y.w;
      if (x.f1 != y.f1) return x.f1 > y.f1;
      if (x.f2 != y.f2) return x.f2 > y.f2;
      return a < b;
    });

    stair.clear();
    best_rank.clear();
    keep.assign(cand.size(), 0);
    for (auto idx : order) {
      const auto& a = cand[idx];
      // strictly dominated by an earlier (lighter or equal) survivor?
      auto it = stair.lower_bound(a.f1);
      bool dominated = false;
      if (it != stair.end()) {
        if (it->first > a.f1) {
          dominated = it->second >= a.f2;
        } else {
          dominated = it->second > a.f2;
          if (!dominated) {
            auto nx = std::next(it);
            dominated = nx != stair.end() && nx->second >= a.f2;
          }
        }
      }
      if (dominated) continue;
      const auto key = std::make_pair(a.f1, a.f2);
      if (auto br = best_rank.find(key); br != best_rank.end()) {
        if (br->second < idx) continue;
        br->second = idx;
      } else {
        best_rank.emplace(key, idx);
      }
      keep[idx] = 1;
      // insert into the staircase unless weakly covered
      it = stair.lower_bound(a.f1);
      if (it != stair.end() && it->second >= a.f2) continue;
      auto first = stair.upper_bound(a.f1);
      // remove points with f1' <= f1 and f2' <= f2
      auto lo = first;
      while (lo != stair.begin()) {
        auto prev = std::prev(lo);
        if (prev->second <= a.f2)
          lo = prev;
        else
          break;
      }
      stair.erase(lo, first);
      stair[a.f1] = a.f2;
    }

    std::vector<Label> next;
    next.reserve(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (!keep[i]) continue;
      auto a = cand[i];
      if (a.node < 0) {
        nodes.push_back({labels[static_cast<std::size_t>(a.from)].node, static_cast<std::int32_t>(jj)});
        a.node = static_cast<std::int32_t>(nodes.size() - 1);
      }
      next.push_back(a);
    }
    labels.swap(next);
  }

  // labels are in lexicographic bit-string order; keep the first label for
  // every nondominated objective pair
  std::vector<std::size_t> idx(labels.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (labels[a].f1 != labels[b].f1) return labels[a].f1 > labels[b].f1;
    if (labels[a].f2 != labels[b].f2) return labels[a].f2 > labels[b].f2;
    return a < b;
  });
  NondominatedFront front;
  std::int64_t best_f2 = -1;
  for (auto i : idx) {
    const auto& a = labels[i];
    if (a.f2 <= best_f2) continue;
    best_f2 = a.f2;
    Solution x(l);
    for (auto n = a.node; n > 0; n = nodes[static_cast<std::size_t>(n)].parent)
      x.bits[static_cast<std::size_t>(nodes[static_cast<std::size_t>(n)].item)] = 1;
    front.entries.push_back({{a.f1, a.f2}, std::move(x)});
  }
  std::reverse(front.entries.begin(), front.entries.end());
  return front;
}

/// Maximizes sum_i lambda_i f_i(x, xi) exactly.
inline ScalarizedResult solve_weighted_sum(const KnapsackInstance& instance,
                                           const ScenarioCosts& scenario,
                                           const LambdaVector& lambda) {
  detail::check_lambda(scenario, lambda);
  detail::require(scenario.num_items() == instance.num_items(),
                  "solve_weighted_sum: scenario item count differs from instance");
  const auto n = scenario.num_objectives();
  std::vector<std::vector<std::int64_t>> keys(instance.num_items(),
                                              std::vector<std::int64_t>(n + 1, 0));
  for (std::size_t j = 0; j < instance.num_items(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      keys[j][0] += lambda.numerator(i) * scenario.cost(i, j);
      keys[j][i + 1] = scenario.cost(i, j);
    }
  }
  auto [x, value] = detail::lex_knapsack(instance, keys);
  ScalarizedResult r;
  r.values.assign(value.begin() + 1, value.end());
  r.scaled_value = value[0];
  r.scale = lambda.denominator();
  r.solution = std::move(x);
  return r;
}

/// h_i = max over scenarios of the single-objective knapsack optimum for i.
inline ReferencePoint reference_point(const ScenarioSet& set) {
  ReferencePoint h;
  h.values.assign(set.num_objectives(), 0);
  for (const auto& sc : set.scenarios())
    for (std::size_t i = 0; i < sc.num_objectives(); ++i)
      h.values[i] = std::max(h.values[i], detail::knapsack_max(set.instance(), sc.row(i)));
  return h;
}

/// max_i lambda_i (h_i - f_i), scaled by the lambda denominator.
inline std::int64_t chebyshev_deviation(const ObjectiveVector& f, const LambdaVector& lambda,
                                        const ReferencePoint& h) {
  detail::require(f.size() == lambda.size() && f.size() == h.values.size(),
                  "chebyshev_deviation: dimension mismatch");
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, lambda.numerator(i) * (h.values[i] - f[i]));
  return worst;
}

/// Minimizes max_i lambda_i (h_i - f_i(x, xi)) over a precomputed front.
inline ScalarizedResult solve_chebyshev(const NondominatedFront& front, const LambdaVector& lambda,
                                        const ReferencePoint& h) {
  detail::require(!front.empty(), "solve_chebyshev: empty front");
  detail::require(lambda.size() == 2 && h.values.size() == 2,
                  "solve_chebyshev: two objectives expected");
  const FrontEntry* best = nullptr;
  std::int64_t best_value = 0;
  for (const auto& e : front.entries) {
    for (std::size_t i = 0; i < 2; ++i)
      if (e.values[i] > h.values[i])
        throw PreconditionError("solve_chebyshev: reference point below an achievable objective");
    const auto v = chebyshev_deviation(e.values, lambda, h);
    // entries ascend in f1, so taking the later entry on ties keeps the
    // lexicographically largest objective vector
    if (!best || v <= best_value) {
      best = &e;
      best_value = v;
    }
  }
  ScalarizedResult r;
  r.solution = best->solution;
  r.values = best->values;
  r.scaled_value = best_value;
  r.scale = lambda.denominator();
  return r;
}

inline ScalarizedResult solve_chebyshev(const KnapsackInstance& instance,
                                        const ScenarioCosts& scenario, const LambdaVector& lambda,
                                        const ReferencePoint& h) {
  detail::check_lambda(scenario, lambda);
  return solve_chebyshev(pareto_front(instance, scenario), lambda, h);
}

/// g_opt(xi, lambda) per (scenario, lambda index, scalarization), scaled by
/// the lambda denominator.
class OptimalValueTable {
 public:
  void set(std::size_t scenario, std::size_t lambda_index, Scalarization method,
           std::int64_t scaled_value) {
    values_[{scenario, lambda_index, method}] = scaled_value;
  }

  std::int64_t at(std::size_t scenario, std::size_t lambda_index, Scalarization method) const {
    auto it = values_.find({scenario, lambda_index, method});
    if (it == values_.end()) throw PreconditionError("optimal value table: missing entry");
    return it->second;
  }

  bool contains(std::size_t scenario, std::size_t lambda_index, Scalarization method) const {
    return values_.count({scenario, lambda_index, method}) != 0;
  }

  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::tuple<std::size_t, std::size_t, Scalarization>, std::int64_t> values_;
};

/// Scalarized optima for every (scenario, lambda) cell.
struct EfficientSample {
  Scalarization method = Scalarization::weighted_sum;
  /// cells[scenario][lambda index]
  std::vector<std::vector<ScalarizedResult>> cells;
  OptimalValueTable table;
  /// set for the Chebyshev scalarization only
  ReferencePoint reference;

  const Solution& solution(std::size_t scenario, std::size_t lambda_index) const {
    return cells[scenario][lambda_index].solution;
  }
};

inline EfficientSample efficient_sample(const ScenarioSet& set,
                                        const std::vector<LambdaVector>& lambdas,
                                        Scalarization method, std::size_t jobs = 1) {
  detail::require(!lambdas.empty(), "efficient_sample: empty lambda grid");
  EfficientSample out;
  out.method = method;
  const auto m = set.num_scenarios();
  out.cells.assign(m, std::vector<ScalarizedResult>(lambdas.size()));
  if (method == Scalarization::chebyshev) {
    out.reference = reference_point(set);
    std::vector<NondominatedFront> fronts(m);
    parallel_for(m, jobs, [&](std::size_t k) {
      fronts[k] = pareto_front(set.instance(), set.scenario(k));
    });
    parallel_for(m * lambdas.size(), jobs, [&](std::size_t cell) {
      const auto k = cell / lambdas.size();
      const auto t = cell % lambdas.size();
      out.cells[k][t] = solve_chebyshev(fronts[k], lambdas[t], out.reference);
    });
  } else {
    parallel_for(m * lambdas.size(), jobs, [&](std::size_t cell) {
      const auto k = cell / lambdas.size();
      const auto t = cell % lambdas.size();
      out.cells[k][t] = solve_weighted_sum(set.instance(), set.scenario(k), lambdas[t]);
    });
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t t = 0; t < lambdas.size(); ++t)
      out.table.set(k, t, method, out.cells[k][t].scaled_value);
  return out;
}

/// CSV: scenario,f1,f2,bits
inline void write_front_csv(std::ostream& out, const std::vector<NondominatedFront>& fronts) {
  out << "scenario,f1,f2,bits\n";
  for (std::size_t k = 0; k < fronts.size(); ++k)
    for (const auto& e : fronts[k].entries)
      out << k << ',' << e.values[0] << ',' << e.values[1] << ',' << e.solution.to_string() << '\n';
}

}  // namespace receff

#endif  // RECEFF_FRONTIER_HPP
