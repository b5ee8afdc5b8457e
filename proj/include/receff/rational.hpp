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

#ifndef RECEFF_RATIONAL_HPP
#define RECEFF_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "receff/model.hpp"

namespace receff {

namespace detail {
__extension__ typedef __int128 wide_int;
}  // namespace detail

/// Exact non-negative-denominator fraction, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
    detail::require(den != 0, "rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const auto g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  /// Parses "3", "0.005" or "1/200" exactly.
  static Rational parse(std::string_view s) {
    detail::require(!s.empty(), "rational: empty string");
    if (auto slash = s.find('/'); slash != std::string_view::npos)
      return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
    bool neg = false;
    if (s.front() == '-' || s.front() == '+') {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    std::int64_t n = 0, d = 1;
    bool seen_point = false, any_digit = false;
    for (char c : s) {
      if (c == '.') {
        detail::require(!seen_point, "rational: multiple decimal points");
        seen_point = true;
        continue;
      }
      detail::require(c >= '0' && c <= '9', "rational: invalid character");
      detail::require(n < (std::int64_t{1} << 55) && d < (std::int64_t{1} << 55),
                      "rational: too many digits");
      any_digit = true;
      n = n * 10 + (c - '0');
      if (seen_point) d *= 10;
    }
    detail::require(any_digit, "rational: no digits");
    return Rational(neg ? -n : n, d);
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<detail::wide_int>(a.num) * b.den <=> static_cast<detail::wide_int>(b.num) * a.den;
  }

  /// Decimal form when the denominator divides a power of ten, else "n/d".
  std::string to_string() const {
    int digits = 0;
    std::int64_t scale = 1;
    while (scale % den != 0) {
      if (digits == 18) return std::to_string(num) + "/" + std::to_string(den);
      scale *= 10;
      ++digits;
    }
    // now num/den == (num * scale / den) / scale exactly
    std::int64_t scaled = num * (scale / den);
    std::string sign = scaled < 0 ? "-" : "";
    if (scaled < 0) scaled = -scaled;
    std::string whole = std::to_string(scaled / scale);
    if (digits == 0) return sign + whole;
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    return sign + whole + "." + frac;
  }

 private:
  static std::int64_t parse_int(std::string_view s) {
    detail::require(!s.empty(), "rational: empty integer");
    bool neg = s.front() == '-';
    if (neg || s.front() == '+') s.remove_prefix(1);
    detail::require(!s.empty(), "rational: empty integer");
    std::int64_t v = 0;
    for (char c : s) {
      detail::require(c >= '0' && c <= '9', "rational: invalid integer");
      v = v * 10 + (c - '0');
    }
    return neg ? -v : v;
  }
};

/// Scalarization weights lambda, stored exactly as integer numerators over one
/// common denominator (hundredths for the standard grid).
class LambdaVector {
 public:
  LambdaVector(std::vector<std::int64_t> numerators, std::int64_t denominator)
      : num_(std::move(numerators)), den_(denominator) {
    detail::require(!num_.empty(), "lambda: empty");
    detail::require(den_ >= 1, "lambda: denominator must be positive");
    std::int64_t sum = 0;
    for (auto v : num_) {
      detail::require(v >= 0, "lambda: components must be non-negative");
      sum += v;
    }
    detail::require(sum == den_, "lambda: components must sum to one");
  }

  /// (k/100, 1 - k/100) for k in [0, 100].
  static LambdaVector from_hundredths(std::int64_t k) {
    detail::require(k >= 0 && k <= 100, "lambda: k out of range");
    return LambdaVector({k, 100 - k}, 100);
  }

  std::size_t size() const { return num_.size(); }
  std::int64_t numerator(std::size_t i) const { return num_[i]; }
  const std::vector<std::int64_t>& numerators() const { return num_; }
  std::int64_t denominator() const { return den_; }
  Rational component(std::size_t i) const { return Rational(num_[i], den_); }

  std::string component_string(std::size_t i) const {
    // fixed two decimals for the hundredths grid keeps CSV columns aligned
    if (den_ == 100) {
      const auto v = num_[i];
      std::string frac = std::to_string(v % 100);
      if (frac.size() == 1) frac.insert(0, "0");
      return std::to_string(v / 100) + "." + frac;
    }
    return component(i).to_string();
  }

  friend bool operator==(const LambdaVector&, const LambdaVector&) = default;

 private:
  std::vector<std::int64_t> num_;
  std::int64_t den_;
};

}  // namespace receff

#endif  // RECEFF_RATIONAL_HPP
