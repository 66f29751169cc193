// Copyright 2026 The Authors.
//
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

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpp/error.hpp"

namespace hpp {

using Rational = mpq_class;
using Integer = mpz_class;

/// Formats a rational as "p/q", always with an explicit denominator.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q", "p", or a plain decimal integer into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error(Errc::ParseError, "empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw Error(Errc::ParseError, "malformed rational literal '" + s + "'");
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Best rational approximation of x with denominator at most max_den,
/// taken from the continued-fraction convergents and semiconvergents.
inline Rational best_rational(double x, const Integer& max_den) {
  if (!std::isfinite(x)) throw Error(Errc::NumericFailure, "cannot rationalize a non-finite value");
  bool negative = x < 0;
  if (negative) x = -x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(rem);
    Integer a(fl);
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) {
      // Largest admissible semiconvergent.
      Integer k = (max_den - q0) / q1;
      Integer ps = k * p1 + p0, qs = k * q1 + q0;
      Rational semi(ps, qs), conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      Rational target(x);
      Rational pick = (abs(semi - target) < abs(conv - target)) ? semi : conv;
      return negative ? Rational(-pick) : pick;
    }
    Integer p2 = a * p1 + p0;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = rem - fl;
    if (frac < 1e-300) break;
    rem = 1.0 / frac;
    if (!std::isfinite(rem)) break;
  }
  Rational out(p1, q1);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hpp
