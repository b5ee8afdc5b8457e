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

// Exact 0-1 mixed linear programming.
//
// Models hold binary variables first, then continuous ones, with dense
// integer-valued coefficients. solve_exact() runs best-bound branch and bound
// over the binaries, bounding every node with a bounded-variable primal
// simplex on the LP relaxation. Relaxation values are floating point, so the
// admissible bound used for pruning is the LP value moved by a safety margin
// toward the favourable side; an "optimal" status therefore certifies a
// closed gap. brute_force() enumerates binaries and resolves each continuous
// variable from the constraints it appears in; it shares no code with the
// simplex and serves as the test oracle.

#ifndef RECEFF_MILP_HPP
#define RECEFF_MILP_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "receff/model.hpp"

namespace receff::milp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };
enum class Status { optimal, infeasible };

/// Raised when the node or time budget runs out before the gap closes.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for numerical breakdown of the relaxation solver or an unbounded
/// relaxation; never silently converted into a result.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Constraint {
  std::vector<double> coefficients;
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
  std::string name;
};

/// A 0-1 mixed linear program. Variable k < num_binary is binary; the rest
/// are continuous with bounds [lower, upper].
struct MilpModel {
  std::size_t num_binary = 0;
  std::size_t num_continuous = 0;
  Sense sense = Sense::minimize;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  /// bounds of the continuous variables, index k - num_binary
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::string> names;
  /// Declares that the optimal objective value is an integer, which lets the
  /// solver round node bounds up. Detected automatically when the objective
  /// only touches binaries with integer coefficients.
  bool integral_objective = false;

  MilpModel() = default;
  MilpModel(std::size_t binaries, std::size_t continuous, Sense s = Sense::minimize)
      : num_binary(binaries),
        num_continuous(continuous),
        sense(s),
        objective(binaries + continuous, 0.0),
        lower(continuous, 0.0),
        upper(continuous, kInfinity) {
    names.reserve(binaries + continuous);
    for (std::size_t k = 0; k < binaries; ++k) names.push_back("b" + std::to_string(k));
    for (std::size_t k = 0; k < continuous; ++k) names.push_back("c" + std::to_string(k));
  }

  std::size_t num_variables() const { return num_binary + num_continuous; }

  /// Adds a constraint from sparse (variable, coefficient) terms.
  Constraint& add(const std::vector<std::pair<std::size_t, double>>& terms, Relation rel,
                  double rhs, std::string name = {}) {
    Constraint c;
    c.coefficients.assign(num_variables(), 0.0);
    for (auto [k, v] : terms) {
      detail::require(k < num_variables(), "milp: constraint term out of range");
      c.coefficients[k] += v;
    }
    c.relation = rel;
    c.rhs = rhs;
    c.name = name.empty() ? "r" + std::to_string(constraints.size()) : std::move(name);
    constraints.push_back(std::move(c));
    return constraints.back();
  }

  void validate() const {
    const auto n = num_variables();
    auto integral = [](double v) {
      return std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15;
    };
    detail::require(objective.size() == n, "milp: objective length mismatch");
    detail::require(names.size() == n, "milp: names length mismatch");
    detail::require(lower.size() == num_continuous && upper.size() == num_continuous,
                    "milp: continuous bounds length mismatch");
    for (double v : objective) detail::require(integral(v), "milp: non-integral objective coefficient");
    for (const auto& c : constraints) {
      detail::require(c.coefficients.size() == n, "milp: constraint length mismatch");
      for (double v : c.coefficients) detail::require(integral(v), "milp: non-integral coefficient");
      detail::require(integral(c.rhs), "milp: non-integral right-hand side");
    }
    for (std::size_t k = 0; k < num_continuous; ++k) {
      detail::require(integral(lower[k]), "milp: continuous lower bounds must be finite integers");
      detail::require(upper[k] == kInfinity || integral(upper[k]),
                      "milp: continuous upper bounds must be integers or +inf");
      detail::require(lower[k] <= upper[k], "milp: empty continuous bound interval");
    }
  }

  bool objective_is_integral() const {
    if (integral_objective) return true;
    for (std::size_t k = num_binary; k < num_variables(); ++k)
      if (objective[k] != 0.0) return false;
    return true;  // validate() guarantees integer coefficients
  }
};

struct MilpSolution {
  Status status = Status::infeasible;
  std::vector<double> assignment;
  double objective_value = 0.0;
  std::size_t nodes = 0;

  bool optimal() const { return status == Status::optimal; }
  bool binary(std::size_t k) const { return assignment[k] > 0.5; }
};

struct SolverConfig {
  std::size_t node_limit = 2'000'000;
  double time_limit_seconds = kInfinity;
};

inline double objective_of(const MilpModel& model, const std::vector<double>& x) {
  double v = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) v += model.objective[k] * x[k];
  return v;
}

/// True when x satisfies every constraint and bound within `tol` and the
/// binaries are exactly 0 or 1.
inline bool satisfies(const MilpModel& model, const std::vector<double>& x, double tol = 1e-6) {
  if (x.size() != model.num_variables()) return false;
  for (std::size_t k = 0; k < model.num_binary; ++k)
    if (x[k] != 0.0 && x[k] != 1.0) return false;
  for (std::size_t k = 0; k < model.num_continuous; ++k) {
    const auto v = x[model.num_binary + k];
    if (v < model.lower[k] - tol || v > model.upper[k] + tol) return false;
  }
  for (const auto& c : model.constraints) {
    double lhs = 0.0, scale = std::max(1.0, std::fabs(c.rhs));
    for (std::size_t k = 0; k < x.size(); ++k) {
      lhs += c.coefficients[k] * x[k];
      scale = std::max(scale, std::fabs(c.coefficients[k]));
    }
    const double t = tol * scale;
    if (c.relation == Relation::less_equal && lhs > c.rhs + t) return false;
    if (c.relation == Relation::greater_equal && lhs < c.rhs - t) return false;
    if (c.relation == Relation::equal && std::fabs(lhs - c.rhs) > t) return false;
  }
  return true;
}

namespace detail {

/// Bounded-variable primal simplex on a dense tableau, minimizing c.x subject
/// to rows {<=, =, >=} and lo <= x <= hi (lo finite).
class BoundedSimplex {
 public:
  enum class Result { optimal, infeasible, unbounded };

  Result solve(const MilpModel& model, const std::vector<double>& lo,
               const std::vector<double>& hi, std::vector<double>& x, double& value) {
    build(model, lo, hi);
    // phase 1: drive artificials to zero
    std::vector<double> cost1(cols_, 0.0);
    for (std::size_t j = first_art_; j < cols_; ++j) cost1[j] = 1.0;
    set_costs(cost1);
    if (iterate() == Result::unbounded) throw SolverError("simplex: unbounded phase 1");
    double infeas = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] >= first_art_) infeas += beta_[i];
    if (infeas > 1e-7 * (1.0 + rhs_scale_)) return Result::infeasible;
    for (std::size_t j = first_art_; j < cols_; ++j) ub_[j] = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] >= first_art_) beta_[i] = 0.0;

    std::vector<double> cost2(cols_, 0.0);
    const double sign = model.sense == Sense::maximize ? -1.0 : 1.0;
    for (std::size_t k = 0; k < nstruct_; ++k) cost2[k] = sign * model.objective[k];
    set_costs(cost2);
    if (iterate() == Result::unbounded) return Result::unbounded;

    std::vector<double> val(cols_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) val[j] = at_upper_[j] ? ub_[j] : 0.0;
    for (std::size_t i = 0; i < rows_; ++i) val[basis_[i]] = beta_[i];
    x.assign(nstruct_, 0.0);
    value = 0.0;
    for (std::size_t k = 0; k < nstruct_; ++k) {
      x[k] = std::clamp(lo[k] + val[k], lo[k], hi[k]);
      value += model.objective[k] * (lo[k] + val[k]);
    }
    return Result::optimal;
  }

 private:
  static constexpr double kPivotTol = 1e-9;
  static constexpr double kCostTol = 1e-9;

  std::size_t rows_ = 0, cols_ = 0, nstruct_ = 0, first_art_ = 0;
  std::vector<double> tab_;  // rows_ x cols_
  std::vector<double> beta_, ub_, cost_, reduced_;
  std::vector<std::size_t> basis_;
  std::vector<std::uint8_t> at_upper_;
  double rhs_scale_ = 1.0;

  double& t(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }

  void build(const MilpModel& model, const std::vector<double>& lo, const std::vector<double>& hi) {
    nstruct_ = model.num_variables();
    rows_ = model.constraints.size();
    std::size_t slacks = 0;
    for (const auto& c : model.constraints) slacks += c.relation != Relation::equal;
    first_art_ = nstruct_ + slacks;
    cols_ = first_art_ + rows_;
    tab_.assign(rows_ * cols_, 0.0);
    beta_.assign(rows_, 0.0);
    basis_.assign(rows_, 0);
    ub_.assign(cols_, kInfinity);
    at_upper_.assign(cols_, 0);
    for (std::size_t k = 0; k < nstruct_; ++k) ub_[k] = hi[k] - lo[k];
    rhs_scale_ = 1.0;

    std::size_t slack = nstruct_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& c = model.constraints[i];
      double scale = 0.0;
      for (double v : c.coefficients) scale = std::max(scale, std::fabs(v));
      if (scale == 0.0) scale = 1.0;
      double b = c.rhs;
      for (std::size_t k = 0; k < nstruct_; ++k) b -= c.coefficients[k] * lo[k];
      b /= scale;
      for (std::size_t k = 0; k < nstruct_; ++k) t(i, k) = c.coefficients[k] / scale;
      std::size_t own_slack = cols_;
      if (c.relation != Relation::equal) {
        own_slack = slack;
        t(i, slack++) = c.relation == Relation::less_equal ? 1.0 : -1.0;
      }
      if (b < 0.0) {
        for (std::size_t j = 0; j < first_art_; ++j) t(i, j) = -t(i, j);
        b = -b;
      }
      t(i, first_art_ + i) = 1.0;
      if (own_slack < cols_ && t(i, own_slack) > 0.0) {
        basis_[i] = own_slack;  // artificial unused for this row
        ub_[first_art_ + i] = 0.0;
      } else {
        basis_[i] = first_art_ + i;
      }
      beta_[i] = b;
      rhs_scale_ = std::max(rhs_scale_, b);
    }
  }

  void set_costs(const std::vector<double>& c) {
    cost_ = c;
    reduced_ = c;
    for (std::size_t i = 0; i < rows_; ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * t(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    const double p = t(r, q);
    double* row = &tab_[r * cols_];
    for (std::size_t j = 0; j < cols_; ++j) row[j] /= p;
    row[q] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = t(i, q);
      if (f == 0.0) continue;
      double* other = &tab_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) other[j] -= f * row[j];
      other[q] = 0.0;
    }
    const double f = reduced_[q];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= f * row[j];
      reduced_[q] = 0.0;
    }
    basis_[r] = q;
  }

  Result iterate() {
    std::vector<std::uint8_t> is_basic(cols_, 0);
    for (auto b : basis_) is_basic[b] = 1;
    std::size_t degenerate = 0;
    const std::size_t max_iter = 50 * (rows_ + cols_) + 1000;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      const bool bland = degenerate > 50;
      std::size_t q = cols_;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_basic[j] || ub_[j] == 0.0) continue;
        const double d = reduced_[j];
        const double gain = at_upper_[j] ? d : -d;
        if (gain > kCostTol && (q == cols_ || (!bland && gain > best))) {
          q = j;
          best = gain;
          if (bland) break;
        }
      }
      if (q == cols_) return Result::optimal;

      // moving x_q by +theta (from lower) or -theta (from upper)
      const double dir = at_upper_[q] ? -1.0 : 1.0;
      double theta = ub_[q];
      std::size_t leave = rows_;
      bool leave_to_upper = false;
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = dir * t(i, q);
        double lim;
        bool to_upper;
        if (a > kPivotTol) {
          lim = std::max(0.0, beta_[i]) / a;
          to_upper = false;
        } else if (a < -kPivotTol && ub_[basis_[i]] < kInfinity) {
          lim = std::max(0.0, ub_[basis_[i]] - beta_[i]) / -a;
          to_upper = true;
        } else {
          continue;
        }
        const bool tie = leave < rows_ && std::fabs(lim - theta) <= 1e-12;
        if (lim < theta - 1e-12 || (tie && basis_[i] < basis_[leave])) {
          theta = std::min(theta, lim);
          leave = i;
          leave_to_upper = to_upper;
        }
      }
      if (theta == kInfinity) return Result::unbounded;
      degenerate = theta < 1e-12 ? degenerate + 1 : 0;

      for (std::size_t i = 0; i < rows_; ++i) beta_[i] -= dir * theta * t(i, q);
      if (leave == rows_) {
        at_upper_[q] = !at_upper_[q];  // bound flip
        continue;
      }
      const double entering = (at_upper_[q] ? ub_[q] : 0.0) + dir * theta;
      const auto out = basis_[leave];
      is_basic[out] = 0;
      at_upper_[out] = leave_to_upper;
      is_basic[q] = 1;
      at_upper_[q] = 0;
      pivot(leave, q);
      beta_[leave] = entering;
    }
    throw SolverError("simplex: iteration limit reached");
  }
};

}  // namespace detail

/// Exact branch and bound over the binaries.
///
/// Branching: most fractional binary, ties by lowest index. Node selection:
/// best bound, then greater depth, then insertion order.
inline MilpSolution solve_exact(const MilpModel& model, const SolverConfig& config = {}) {
  model.validate();
  const auto n = model.num_variables();
  const bool maximize = model.sense == Sense::maximize;
  const bool integral = model.objective_is_integral();
  const auto start = std::chrono::steady_clock::now();

  std::vector<double> base_lo(n), base_hi(n);
  for (std::size_t k = 0; k < model.num_binary; ++k) base_lo[k] = 0.0, base_hi[k] = 1.0;
  for (std::size_t k = 0; k < model.num_continuous; ++k) {
    base_lo[model.num_binary + k] = model.lower[k];
    base_hi[model.num_binary + k] = model.upper[k];
  }

  struct Node {
    double bound;  // admissible, in minimization orientation
    std::size_t depth;
    std::size_t id;
    std::vector<std::int8_t> fixed;  // -1 free, else value
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  // moves an LP value to an admissible lower bound (minimization orientation)
  auto admissible = [integral](double z) {
    double lb = z - 1e-9 * std::max(1.0, std::fabs(z)) - 1e-7;
    if (integral) lb = std::ceil(lb);
    return lb;
  };

  detail::BoundedSimplex lp;
  MilpSolution best;
  best.status = Status::infeasible;
  double incumbent = kInfinity;  // minimization orientation
  std::size_t next_id = 0;
  open.push({-kInfinity, 0, next_id++, std::vector<std::int8_t>(model.num_binary, -1)});

  std::vector<double> lo, hi, x;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent) continue;
    if (++best.nodes > config.node_limit)
      throw LimitError("milp: node limit of " + std::to_string(config.node_limit) + " exceeded");
    if (config.time_limit_seconds < kInfinity) {
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
      if (el.count() > config.time_limit_seconds) throw LimitError("milp: time limit exceeded");
    }

    lo = base_lo;
    hi = base_hi;
    for (std::size_t k = 0; k < model.num_binary; ++k)
      if (node.fixed[k] >= 0) lo[k] = hi[k] = node.fixed[k];
    double value = 0.0;
    const auto res = lp.solve(model, lo, hi, x, value);
    if (res == detail::BoundedSimplex::Result::infeasible) continue;
    if (res == detail::BoundedSimplex::Result::unbounded)
      throw SolverError("milp: unbounded relaxation");
    const double z = maximize ? -value : value;
    const double bound = std::max(node.bound, admissible(z));
    if (bound >= incumbent) continue;

    std::size_t branch = model.num_binary;
    double most = 1e-6;
    for (std::size_t k = 0; k < model.num_binary; ++k) {
      const double frac = std::fabs(x[k] - std::round(x[k]));
      if (frac > most + 1e-12) {
        most = frac;
        branch = k;
      }
    }
    if (branch == model.num_binary) {
      // integral relaxation: fix the rounded binaries and recover the
      // continuous part exactly
      for (std::size_t k = 0; k < model.num_binary; ++k) lo[k] = hi[k] = std::round(x[k]);
      std::vector<double> y;
      double yv = 0.0;
      if (lp.solve(model, lo, hi, y, yv) != detail::BoundedSimplex::Result::optimal) continue;
      for (std::size_t k = 0; k < model.num_binary; ++k) y[k] = lo[k];
      double obj = objective_of(model, y);
      if (integral && std::fabs(obj - std::round(obj)) < 1e-6) obj = std::round(obj);
      const double zo = maximize ? -obj : obj;
      if (zo < incumbent) {
        incumbent = zo;
        best.status = Status::optimal;
        best.assignment = std::move(y);
        best.objective_value = obj;
      }
      continue;
    }
    for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
      Node child{bound, node.depth + 1, next_id++, node.fixed};
      child.fixed[branch] = v;
      open.push(std::move(child));
    }
  }
  return best;
}

/// Exhaustive enumeration of the binaries (at most 25). Each continuous
/// variable is set from the bounds implied by constraints that mention no
/// other continuous variable, at the end favoured by the objective.
inline MilpSolution brute_force(const MilpModel& model) {
  model.validate();
  if (model.num_binary > 25)
    throw PreconditionError("milp brute force: refusing more than 25 binaries");
  const auto nb = model.num_binary;
  const auto n = model.num_variables();
  const double sign = model.sense == Sense::maximize ? -1.0 : 1.0;
  for (const auto& c : model.constraints) {
    std::size_t cont = 0;
    for (std::size_t k = nb; k < n; ++k) cont += c.coefficients[k] != 0.0;
    if (cont > 1)
      throw UnsupportedError("milp brute force: constraint couples continuous variables");
  }

  MilpSolution best;
  best.status = Status::infeasible;
  double best_z = kInfinity;
  std::vector<double> x(n, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << nb); ++mask) {
    ++best.nodes;
    for (std::size_t k = 0; k < nb; ++k) x[k] = static_cast<double>((mask >> k) & 1u);
    std::vector<double> lo(model.lower), hi(model.upper);
    bool ok = true;
    for (const auto& c : model.constraints) {
      double rest = c.rhs;
      for (std::size_t k = 0; k < nb; ++k) rest -= c.coefficients[k] * x[k];
      std::size_t which = n;
      for (std::size_t k = nb; k < n; ++k)
        if (c.coefficients[k] != 0.0) which = k;
      if (which == n) {
        const double tol = 1e-9 * std::max(1.0, std::fabs(c.rhs));
        if (c.relation == Relation::less_equal && rest < -tol) ok = false;
        if (c.relation == Relation::greater_equal && rest > tol) ok = false;
        if (c.relation == Relation::equal && std::fabs(rest) > tol) ok = false;
      } else {
        const double a = c.coefficients[which];
        const double v = rest / a;
        const auto idx = which - nb;
        const bool upper_side = (c.relation == Relation::less_equal) == (a > 0);
        if (c.relation == Relation::equal || upper_side) hi[idx] = std::min(hi[idx], v);
        if (c.relation == Relation::equal || !upper_side) lo[idx] = std::max(lo[idx], v);
      }
      if (!ok) break;
    }
    if (!ok) continue;
    for (std::size_t k = 0; k < model.num_continuous && ok; ++k) {
      if (lo[k] > hi[k] + 1e-9 * std::max(1.0, std::fabs(hi[k]))) {
        ok = false;
        break;
      }
      const double c = sign * model.objective[nb + k];
      if (c < 0.0) {
        if (hi[k] == kInfinity) throw SolverError("milp brute force: unbounded objective");
        x[nb + k] = hi[k];
      } else {
        x[nb + k] = std::min(lo[k], hi[k]);
      }
    }
    if (!ok) continue;
    const double z = sign * objective_of(model, x);
    if (z < best_z) {
      best_z = z;
      best.status = Status::optimal;
      best.assignment = x;
      best.objective_value = objective_of(model, x);
    }
  }
  return best;
}

}  // namespace receff::milp

#endif  // RECEFF_MILP_HPP
