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

// Line-oriented text format for scenario sets:
//
//   l n m W
//   w_1 ... w_l
//   m blocks of n lines, each holding l integer costs
//
// Tokens are whitespace separated; there are no comments.

#ifndef RECEFF_INSTANCE_IO_HPP
#define RECEFF_INSTANCE_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "receff/model.hpp"

namespace receff {

/// Malformed or unreadable input/output files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_scenario_set(std::ostream& out, const ScenarioSet& set) {
  const auto& inst = set.instance();
  const auto l = inst.num_items();
  out << l << ' ' << set.num_objectives() << ' ' << set.num_scenarios() << ' '
      << inst.capacity() << '\n';
  for (std::size_t j = 0; j < l; ++j) out << (j ? " " : "") << inst.weight(j);
  out << '\n';
  for (const auto& sc : set.scenarios()) {
    for (const auto& row : sc.rows()) {
      for (std::size_t j = 0; j < l; ++j) out << (j ? " " : "") << row[j];
      out << '\n';
    }
  }
}

inline std::string scenario_set_to_string(const ScenarioSet& set) {
  std::ostringstream os;
  write_scenario_set(os, set);
  return os.str();
}

inline ScenarioSet read_scenario_set(std::istream& in) {
  auto next = [&in](const char* what) {
    long long v;
    if (!(in >> v)) throw IoError(std::string("instance file: expected ") + what);
    return static_cast<std::int64_t>(v);
  };
  const auto l = next("item count");
  const auto n = next("objective count");
  const auto m = next("scenario count");
  const auto cap = next("capacity");
  if (l < 1 || n < 1 || m < 1) throw IoError("instance file: counts must be positive");
  std::vector<std::int64_t> weights(static_cast<std::size_t>(l));
  for (auto& w : weights) w = next("weight");
  std::vector<ScenarioCosts> scenarios;
  scenarios.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n),
                                                std::vector<std::int64_t>(static_cast<std::size_t>(l)));
    for (auto& row : rows)
      for (auto& c : row) c = next("cost");
    scenarios.emplace_back(std::move(rows));
  }
  std::string trailing;
  if (in >> trailing) throw IoError("instance file: unexpected trailing data");
  try {
    return ScenarioSet(KnapsackInstance(std::move(weights), cap), std::move(scenarios));
  } catch (const StructuralError& e) {
    throw IoError(std::string("instance file: ") + e.what());
  }
}

inline ScenarioSet load_scenario_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file: " + path);
  return read_scenario_set(in);
}

inline void save_scenario_set(const std::string& path, const ScenarioSet& set) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write instance file: " + path);
  write_scenario_set(out, set);
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace receff

#endif  // RECEFF_INSTANCE_IO_HPP
