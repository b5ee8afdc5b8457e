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

// Core domain types for uncertain multi-objective 0-1 knapsack problems:
// the deterministic instance, per-scenario cost matrices, binary solutions,
// objective evaluation, dominance (maximization sense) and the Hamming
// recovery cost.

#ifndef RECEFF_MODEL_HPP
#define RECEFF_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace receff {

/// Raised when the dimensions of two inputs disagree or a type invariant is
/// violated at construction.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation is asked for a case it does not implement (for
/// example an exact frontier with more than two objectives).
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw StructuralError(what);
}
}  // namespace detail

/// Items, weights and capacity; shared by every scenario.
class KnapsackInstance {
 public:
  KnapsackInstance(std::vector<std::int64_t> weights, std::int64_t capacity)
      : weights_(std::move(weights)), capacity_(capacity) {
    detail::require(!weights_.empty(), "instance needs at least one item");
    detail::require(capacity_ >= 0, "capacity must be non-negative");
    for (auto w : weights_) detail::require(w >= 1, "weights must be >= 1");
  }

  std::size_t num_items() const { return weights_.size(); }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  std::int64_t weight(std::size_t j) const { return weights_[j]; }
  std::int64_t capacity() const { return capacity_; }
  std::int64_t total_weight() const {
    return std::accumulate(weights_.begin(), weights_.end(), std::int64_t{0});
  }

  friend bool operator==(const KnapsackInstance&, const KnapsackInstance&) = default;

 private:
  std::vector<std::int64_t> weights_;
  std::int64_t capacity_;
};

/// Objective coefficients of one scenario: row i holds c^i_j for all items.
class ScenarioCosts {
 public:
  explicit ScenarioCosts(std::vector<std::vector<std::int64_t>> rows)
      : rows_(std::move(rows)) {
    detail::require(!rows_.empty(), "scenario needs at least one objective");
    const auto len = rows_.front().size();
    detail::require(len >= 1, "scenario rows must be non-empty");
    for (const auto& r : rows_) {
      detail::require(r.size() == len, "scenario rows differ in length");
      for (auto c : r) detail::require(c >= 1, "costs must be >= 1");
    }
  }

  std::size_t num_objectives() const { return rows_.size(); }
  std::size_t num_items() const { return rows_.front().size(); }
  const std::vector<std::int64_t>& row(std::size_t i) const { return rows_[i]; }
  std::int64_t cost(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<std::int64_t>>& rows() const { return rows_; }

  friend bool operator==(const ScenarioCosts&, const ScenarioCosts&) = default;

 private:
  std::vector<std::vector<std::int64_t>> rows_;
};

/// The finite uncertainty sample together with its instance.
class ScenarioSet {
 public:
  ScenarioSet(KnapsackInstance instance, std::vector<ScenarioCosts> scenarios,
              std::size_t nominal_index = 0)
      : instance_(std::move(instance)),
        scenarios_(std::move(scenarios)),
        nominal_(nominal_index) {
    detail::require(!scenarios_.empty(), "scenario set needs at least one scenario");
    const auto n = scenarios_.front().num_objectives();
    for (const auto& s : scenarios_) {
      detail::require(s.num_objectives() == n, "scenarios differ in objective count");
      detail::require(s.num_items() == instance_.num_items(),
                      "scenario item count differs from instance");
    }
    detail::require(nominal_ < scenarios_.size(), "nominal index out of range");
  }

  const KnapsackInstance& instance() const { return instance_; }
  const std::vector<ScenarioCosts>& scenarios() const { return scenarios_; }
  const ScenarioCosts& scenario(std::size_t k) const { return scenarios_[k]; }
  const ScenarioCosts& nominal() const { return scenarios_[nominal_]; }
  std::size_t nominal_index() const { return nominal_; }
  std::size_t num_scenarios() const { return scenarios_.size(); }
  std::size_t num_objectives() const { return scenarios_.front().num_objectives(); }
  std::size_t num_items() const { return instance_.num_items(); }

  friend bool operator==(const ScenarioSet&, const ScenarioSet&) = default;

 private:
  KnapsackInstance instance_;
  std::vector<ScenarioCosts> scenarios_;
  std::size_t nominal_;
};

/// A 0-1 selection vector x.
struct Solution {
  std::vector<std::uint8_t> bits;

  Solution() = default;
  explicit Solution(std::size_t length) : bits(length, 0) {}
  explicit Solution(std::vector<std::uint8_t> b) : bits(std::move(b)) {
    for (auto v : bits) detail::require(v <= 1, "solution bits must be 0 or 1");
  }

  /// Parses a string of '0'/'1' characters.
  static Solution from_string(std::string_view s) {
    Solution x(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      detail::require(s[j] == '0' || s[j] == '1', "bit string must contain only 0/1");
      x.bits[j] = static_cast<std::uint8_t>(s[j] - '0');
    }
    return x;
  }

  std::size_t size() const { return bits.size(); }
  bool operator[](std::size_t j) const { return bits[j] != 0; }

  std::string to_string() const {
    std::string s(bits.size(), '0');
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (bits[j]) s[j] = '1';
    return s;
  }

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution&, const Solution&) = default;
};

/// f(x, xi): one value per objective.
using ObjectiveVector = std::vector<std::int64_t>;

inline std::int64_t total_weight(const KnapsackInstance& instance, const Solution& x) {
  detail::require(x.size() == instance.num_items(), "solution length differs from instance");
  std::int64_t w = 0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x.bits[j]) w += instance.weight(j);
  return w;
}

inline bool is_feasible(const KnapsackInstance& instance, const Solution& x) {
  return total_weight(instance, x) <= instance.capacity();
}

inline ObjectiveVector evaluate(const ScenarioCosts& scenario, const Solution& x) {
  detail::require(x.size() == scenario.num_items(), "solution length differs from scenario");
  ObjectiveVector f(scenario.num_objectives(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& row = scenario.row(i);
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x.bits[j]) f[i] += row[j];
  }
  return f;
}

/// Number of positions in which the two selections differ.
inline std::int64_t hamming(const Solution& x, const Solution& y) {
  detail::require(x.size() == y.size(), "hamming: length mismatch");
  std::int64_t d = 0;
  for (std::size_t j = 0; j < x.size(); ++j) d += (x.bits[j] != y.bits[j]);
  return d;
}

/// u dominates v under maximization: u >= v everywhere, > somewhere.
inline bool dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
  detail::require(u.size() == v.size(), "dominates: length mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] < v[i]) return false;
    if (u[i] > v[i]) strict = true;
  }
  return strict;
}

/// u >= v component-wise.
inline bool weakly_dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
  detail::require(u.size() == v.size(), "weakly_dominates: length mismatch");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] < v[i]) return false;
  return true;
}

}  // namespace receff

#endif  // RECEFF_MODEL_HPP
