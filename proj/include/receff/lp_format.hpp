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

// CPLEX-style LP file writer and reader for MilpModel.
//
// The writer lists every continuous variable in `Bounds` and every binary in
// `Binary`; the reader orders variables the same way (binaries first, in
// `Binary` order, then continuous variables in `Bounds` order), so
// export_lp(parse_lp(export_lp(m))) == export_lp(m).

#ifndef RECEFF_LP_FORMAT_HPP
#define RECEFF_LP_FORMAT_HPP

#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "receff/milp.hpp"

namespace receff::milp {

class LpParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr std::string_view kIntegralTag = "\\ integral objective";

inline std::string format_number(double v) {
  if (v == std::floor(v) && std::fabs(v) < 9.0e15) return std::to_string(static_cast<long long>(v));
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

/// Appends "c x" terms, wrapping long expressions onto continuation lines.
inline void write_terms(std::ostringstream& out, const std::vector<double>& coef,
                        const std::vector<std::string>& names) {
  std::size_t written = 0;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    const double c = coef[k];
    if (c == 0.0) continue;
    if (written > 0 && written % 8 == 0) out << "\n   ";
    const bool neg = c < 0.0;
    const double mag = std::fabs(c);
    if (written == 0) {
      if (neg) out << "- ";
    } else {
      out << (neg ? " - " : " + ");
    }
    if (mag != 1.0) out << format_number(mag) << ' ';
    out << names[k];
    ++written;
  }
  if (written == 0 && !names.empty()) out << "0 " << names.front();
}

}  // namespace detail

inline std::string export_lp(const MilpModel& model) {
  model.validate();
  std::ostringstream out;
  out << "\\ receff model: " << model.num_binary << " binary, " << model.num_continuous
      << " continuous\n";
  if (model.integral_objective) out << detail::kIntegralTag << '\n';
  out << (model.sense == Sense::maximize ? "Maximize" : "Minimize") << '\n';
  out << " obj: ";
  detail::write_terms(out, model.objective, model.names);
  out << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    out << ' ' << c.name << ": ";
    detail::write_terms(out, c.coefficients, model.names);
    switch (c.relation) {
      case Relation::less_equal: out << " <= "; break;
      case Relation::greater_equal: out << " >= "; break;
      case Relation::equal: out << " = "; break;
    }
    out << detail::format_number(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (std::size_t k = 0; k < model.num_continuous; ++k) {
    const auto& name = model.names[model.num_binary + k];
    if (model.upper[k] == kInfinity)
      out << ' ' << name << " >= " << detail::format_number(model.lower[k]) << '\n';
    else
      out << ' ' << detail::format_number(model.lower[k]) << " <= " << name
          << " <= " << detail::format_number(model.upper[k]) << '\n';
  }
  out << "Binary\n";
  for (std::size_t k = 0; k < model.num_binary; ++k) {
    out << ' ' << model.names[k];
    if (k % 10 == 9 || k + 1 == model.num_binary) out << '\n';
  }
  out << "End\n";
  return out.str();
}

namespace detail {

struct LpToken {
  enum Kind { word, number, op, colon } kind;
  std::string text;
  bool line_start = false;
};

inline std::vector<LpToken> lp_tokenize(std::string_view text, bool& integral_tag) {
  std::vector<LpToken> out;
  std::size_t i = 0;
  bool line_start = true;
  auto is_name_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || std::string_view("_.!\"#$%&(),;?@'{}~[]").find(c) != std::string_view::npos;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      line_start = true;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '\\') {
      const auto end = text.find('\n', i);
      const auto line = text.substr(i, end == std::string_view::npos ? text.size() - i : end - i);
      if (line == kIntegralTag) integral_tag = true;
      i = end == std::string_view::npos ? text.size() : end;
      continue;
    }
    LpToken tok;
    tok.line_start = line_start;
    line_start = false;
    if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < text.size() && (text[i + 1] == '=' || text[i + 1] == '<' || text[i + 1] == '>')) {
        op += text[i + 1];
        ++i;
      }
      ++i;
      if (op == "=<" || op == "<") op = "<=";
      if (op == "=>" || op == ">") op = ">=";
      tok.kind = LpToken::op;
      tok.text = op;
    } else if (c == '+' || c == '-') {
      tok.kind = LpToken::op;
      tok.text = std::string(1, c);
      ++i;
    } else if (c == ':') {
      tok.kind = LpToken::colon;
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.')) ++j;
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
        if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
          j = k;
          while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        }
      }
      tok.kind = LpToken::number;
      tok.text = std::string(text.substr(i, j - i));
      i = j;
    } else if (is_name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      tok.kind = LpToken::word;
      tok.text = std::string(text.substr(i, j - i));
      i = j;
    } else {
      throw LpParseError(std::string("lp: unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  return out;
}

inline std::string lower_case(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

}  // namespace detail

/// Reads the subset of the LP format produced by export_lp: linear objective
/// and rows, simple bounds, and a Binary section. General integers and
/// quadratic terms are rejected.
inline MilpModel parse_lp(std::string_view text) {
  using detail::LpToken;
  bool integral_tag = false;
  const auto toks = detail::lp_tokenize(text, integral_tag);

  enum class Section { none, objective, rows, bounds, binary, end };
  struct Row {
    std::string name;
    std::vector<std::pair<std::string, double>> terms;
    Relation rel = Relation::less_equal;
    double rhs = 0.0;
  };
  std::optional<Sense> sense;
  std::vector<std::pair<std::string, double>> obj_terms;
  std::vector<Row> rows;
  std::vector<std::string> binaries, cont_order;
  std::map<std::string, std::pair<double, double>> bounds;
  std::map<std::string, std::size_t> first_seen;
  std::vector<std::string> seen_order;
  auto note = [&](const std::string& v) {
    if (first_seen.emplace(v, seen_order.size()).second) seen_order.push_back(v);
  };

  auto section_of = [&](std::size_t& i) -> std::optional<Section> {
    const auto& t = toks[i];
    if (t.kind != LpToken::word || !t.line_start) return std::nullopt;
    const auto w = detail::lower_case(t.text);
    if (w == "maximize" || w == "maximum" || w == "max") {
      sense = Sense::maximize;
      return Section::objective;
    }
    if (w == "minimize" || w == "minimum" || w == "min") {
      sense = Sense::minimize;
      return Section::objective;
    }
    if (w == "subject" && i + 1 < toks.size() && detail::lower_case(toks[i + 1].text) == "to") {
      ++i;
      return Section::rows;
    }
    if (w == "st" || w == "s.t." || w == "such") return Section::rows;
    if (w == "bounds" || w == "bound") return Section::bounds;
    if (w == "binary" || w == "binaries" || w == "bin") return Section::binary;
    if (w == "general" || w == "generals" || w == "gen" || w == "semi-continuous")
      throw LpParseError("lp: only binary and continuous variables are supported");
    if (w == "end") return Section::end;
    return std::nullopt;
  };

  auto number = [](const std::string& s) {
    const auto l = detail::lower_case(s);
    if (l == "inf" || l == "infinity") return kInfinity;
    return std::stod(s);
  };

  // collects the tokens of one section
  Section sec = Section::none;
  std::vector<std::vector<const LpToken*>> chunks;  // statements inside a section
  std::size_t i = 0;
  auto parse_expr = [&](const std::vector<const LpToken*>& ts, std::size_t& p,
                        std::vector<std::pair<std::string, double>>& terms) {
    bool first = true;
    while (p < ts.size()) {
      double sign = 1.0;
      bool any = false;
      while (p < ts.size() && ts[p]->kind == LpToken::op && (ts[p]->text == "+" || ts[p]->text == "-")) {
        if (ts[p]->text == "-") sign = -sign;
        ++p;
        any = true;
      }
      if (p >= ts.size()) throw LpParseError("lp: dangling sign");
      if (ts[p]->kind == LpToken::op) {
        if (any) throw LpParseError("lp: sign before relation");
        return;
      }
      if (!first && !any) throw LpParseError("lp: missing operator between terms");
      first = false;
      double coef = 1.0;
      if (ts[p]->kind == LpToken::number) {
        coef = number(ts[p]->text);
        ++p;
        if (p >= ts.size() || ts[p]->kind != LpToken::word) {
          throw LpParseError("lp: constant terms are not supported");
        }
      }
      if (ts[p]->kind != LpToken::word) throw LpParseError("lp: expected variable name");
      terms.emplace_back(ts[p]->text, sign * coef);
      note(ts[p]->text);
      ++p;
    }
  };

  std::vector<const LpToken*> cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    if (sec == Section::objective) {
      std::size_t p = 0;
      if (cur.size() >= 2 && cur[0]->kind == LpToken::word && cur[1]->kind == LpToken::colon) p = 2;
      parse_expr(cur, p, obj_terms);
      if (p != cur.size()) throw LpParseError("lp: malformed objective");
    } else if (sec == Section::rows) {
      Row r;
      std::size_t p = 0;
      if (cur.size() >= 2 && cur[0]->kind == LpToken::word && cur[1]->kind == LpToken::colon) {
        r.name = cur[0]->text;
        p = 2;
      } else {
        r.name = "r" + std::to_string(rows.size());
      }
      parse_expr(cur, p, r.terms);
      if (p >= cur.size() || cur[p]->kind != LpToken::op) throw LpParseError("lp: missing relation in " + r.name);
      const auto& op = cur[p]->text;
      r.rel = op == "<=" ? Relation::less_equal : op == ">=" ? Relation::greater_equal : Relation::equal;
      ++p;
      double sign = 1.0;
      while (p < cur.size() && cur[p]->kind == LpToken::op && (cur[p]->text == "-" || cur[p]->text == "+")) {
        if (cur[p]->text == "-") sign = -sign;
        ++p;
      }
      if (p + 1 != cur.size() || cur[p]->kind != LpToken::number)
        throw LpParseError("lp: malformed right-hand side in " + r.name);
      r.rhs = sign * number(cur[p]->text);
      rows.push_back(std::move(r));
    }
    cur.clear();
  };

  // Statements end at a line start that begins a new labelled row, a new
  // section, or (for rows) after the right-hand side number.
  for (i = 0; i < toks.size(); ++i) {
    if (auto s = section_of(i)) {
      flush();
      sec = *s;
      if (sec == Section::end) break;
      continue;
    }
    const auto& t = toks[i];
    switch (sec) {
      case Section::none:
        throw LpParseError("lp: content before objective section");
      case Section::objective:
        cur.push_back(&t);
        break;
      case Section::rows: {
        cur.push_back(&t);
        // a row is complete once a relation has been seen and followed by a number
        bool has_rel = false;
        for (auto* c : cur)
          if (c->kind == LpToken::op && c->text != "+" && c->text != "-") has_rel = true;
        if (has_rel && t.kind == LpToken::number) flush();
        break;
      }
      case Section::bounds: {
        cur.push_back(&t);
        // bound statements: "name >= a", "name <= b", "a <= name <= b", "name free"
        auto finish = [&](const std::string& name, double lo, double hi) {
          note(name);
          if (!bounds.count(name)) cont_order.push_back(name);
          bounds[name] = {lo, hi};
          cur.clear();
        };
        auto num_at = [&](std::size_t& p) {
          double sign = 1.0;
          while (p < cur.size() && cur[p]->kind == LpToken::op && (cur[p]->text == "-" || cur[p]->text == "+")) {
            if (cur[p]->text == "-") sign = -sign;
            ++p;
          }
          if (p >= cur.size()) return std::optional<double>{};
          if (cur[p]->kind == LpToken::number || detail::lower_case(cur[p]->text) == "inf" ||
              detail::lower_case(cur[p]->text) == "infinity")
            return std::optional<double>{sign * number(cur[p++]->text)};
          return std::optional<double>{};
        };
        const bool more_follows = i + 1 < toks.size() && !toks[i + 1].line_start;
        if (more_follows) break;
        std::size_t p = 0;
        if (cur.size() == 2 && cur[0]->kind == LpToken::word && detail::lower_case(cur[1]->text) == "free") {
          finish(cur[0]->text, -kInfinity, kInfinity);
          break;
        }
        if (auto a = num_at(p)) {
          // a <= name [<= b]
          if (p + 1 >= cur.size() || cur[p]->text != "<=" || cur[p + 1]->kind != LpToken::word)
            throw LpParseError("lp: malformed bound");
          const auto name = cur[p + 1]->text;
          p += 2;
          double hi = kInfinity;
          if (p < cur.size()) {
            if (cur[p]->text != "<=") throw LpParseError("lp: malformed bound");
            ++p;
            auto b = num_at(p);
            if (!b || p != cur.size()) throw LpParseError("lp: malformed bound");
            hi = *b;
          }
          finish(name, *a, hi);
        } else {
          if (cur.size() < 3 || cur[0]->kind != LpToken::word) throw LpParseError("lp: malformed bound");
          const auto name = cur[0]->text;
          const auto op = cur[1]->text;
          p = 2;
          auto b = num_at(p);
          if (!b || p != cur.size()) throw LpParseError("lp: malformed bound");
          auto cur_b = bounds.count(name) ? bounds[name] : std::pair<double, double>{0.0, kInfinity};
          if (op == ">=") cur_b.first = *b;
          else if (op == "<=") cur_b.second = *b;
          else cur_b = {*b, *b};
          finish(name, cur_b.first, cur_b.second);
        }
        break;
      }
      case Section::binary:
        if (t.kind != LpToken::word) throw LpParseError("lp: expected names in Binary section");
        binaries.push_back(t.text);
        note(t.text);
        break;
      case Section::end:
        break;
    }
  }
  flush();
  if (!sense) throw LpParseError("lp: missing objective sense");

  // variable order: binaries, then continuous in Bounds order, then the rest
  std::map<std::string, std::size_t> index;
  std::vector<std::string> names;
  for (const auto& b : binaries)
    if (index.emplace(b, names.size()).second) names.push_back(b);
  const auto nb = names.size();
  for (const auto& c : cont_order)
    if (index.emplace(c, names.size()).second) names.push_back(c);
  for (const auto& v : seen_order)
    if (index.emplace(v, names.size()).second) names.push_back(v);

  MilpModel m(nb, names.size() - nb, *sense);
  m.names = names;
  m.integral_objective = integral_tag;
  for (std::size_t k = nb; k < names.size(); ++k) {
    if (auto it = bounds.find(names[k]); it != bounds.end()) {
      m.lower[k - nb] = it->second.first;
      m.upper[k - nb] = it->second.second;
    }
  }
  for (const auto& [name, c] : obj_terms) m.objective[index.at(name)] += c;
  for (const auto& r : rows) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (const auto& [name, c] : r.terms) terms.emplace_back(index.at(name), c);
    m.add(terms, r.rel, r.rhs, r.name);
  }
  try {
    m.validate();
  } catch (const StructuralError& e) {
    throw LpParseError(std::string("lp: ") + e.what());
  }
  return m;
}

}  // namespace receff::milp

#endif  // RECEFF_LP_FORMAT_HPP
