//  Copyright 2026 The qmet Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef QMET_RATIONAL_HPP_
#define QMET_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "qmet/error.hpp"

namespace qmet {

using Rational = boost::multiprecision::cpp_rational;

/// Element of the extended non-negative rational half-line [0, inf].
/// Comparisons and arithmetic here are NUMERIC; the reversed quantale order
/// lives in the quantale implementations, not in this type.
struct ExtRat {
  bool inf = false;
  Rational v = 0;  // meaningful only when !inf; always >= 0

  ExtRat() = default;
  explicit ExtRat(Rational r) : v(std::move(r)) {}
  explicit ExtRat(long n) : v(n) {}

  static ExtRat infinity() {
    ExtRat r;
    r.inf = true;
    return r;
  }

  bool is_zero() const { return !inf && v == 0; }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.v == b.v;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }

  /// Numeric order, infinity greatest.
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.v < b.v;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) {
    return a < b || a == b;
  }

  friend ExtRat operator+(const ExtRat& a, const ExtRat& b) {
    if (a.inf || b.inf) return infinity();
    return ExtRat(a.v + b.v);
  }

  static ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }
  static ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }

  /// Arithmetic midpoint of two finite values.
  static ExtRat midpoint(const ExtRat& a, const ExtRat& b) {
    return ExtRat(Rational(a.v + b.v) / 2);
  }

  ExtRat half() const {
    if (inf) return infinity();
    return ExtRat(Rational(v) / 2);
  }

  std::string to_string() const {
    if (inf) return "inf";
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
  }

  /// Parses "inf", "k" or "p/q" with p, q >= 0.  Rejects anything else.
  static std::optional<ExtRat> parse(const std::string& s) {
    if (s == "inf") return infinity();
    if (s.empty()) return std::nullopt;
    for (char c : s)
      if (!(c >= '0' && c <= '9') && c != '/') return std::nullopt;
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos)
        return ExtRat(Rational(boost::multiprecision::cpp_int(s)));
      boost::multiprecision::cpp_int num(s.substr(0, slash));
      boost::multiprecision::cpp_int den(s.substr(slash + 1));
      if (den == 0) return std::nullopt;
      return ExtRat(Rational(num, den));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
};

}  // namespace qmet

#endif  // QMET_RATIONAL_HPP_
