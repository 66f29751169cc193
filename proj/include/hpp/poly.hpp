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

// Sparse multivariate polynomials with exact rational coefficients.
//
// An exponent vector is packed 4 bits per variable into a 64-bit key, so a
// polynomial has at most 16 variables and per-variable degree at most 15.
// Variables are numbered 1..nvars in the public interface.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/linalg.hpp"
#include "hpp/matroid.hpp"
#include "hpp/rational.hpp"

namespace hpp {

using MonoKey = std::uint64_t;

inline constexpr int kMaxVars = 16;

inline int exponent(MonoKey key, int var) { return static_cast<int>((key >> (4 * (var - 1))) & 0xFu); }

inline MonoKey with_exponent(MonoKey key, int var, int e) {
  const int shift = 4 * (var - 1);
  return (key & ~(MonoKey{0xF} << shift)) | (static_cast<MonoKey>(e) << shift);
}

inline MonoKey var_key(int var) { return MonoKey{1} << (4 * (var - 1)); }

inline int total_degree(MonoKey key) {
  int d = 0;
  for (; key != 0; key >>= 4) d += static_cast<int>(key & 0xFu);
  return d;
}

inline MonoKey make_key(const std::vector<int>& exps) {
  if (exps.size() > kMaxVars) throw Error(Errc::DimensionMismatch, "more than 16 variables");
  MonoKey k = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] > 15) throw Error(Errc::DegreeOverflow, "exponent outside 0..15");
    k |= static_cast<MonoKey>(exps[i]) << (4 * i);
  }
  return k;
}

inline std::vector<int> exponents_of(MonoKey key, int nvars) {
  std::vector<int> out(nvars);
  for (int v = 1; v <= nvars; ++v) out[v - 1] = exponent(key, v);
  return out;
}

/// Multiaffine monomial x^S for an element mask S.
inline MonoKey key_of_mask(Mask s) {
  MonoKey k = 0;
  for (int e : elements_of(s)) k |= var_key(e);
  return k;
}

/// Inverse of key_of_mask; valid only for multiaffine keys.
inline Mask mask_of_key(MonoKey key) {
  Mask m = 0;
  for (int b = 0; key != 0; ++b, key >>= 4)
    if (key & 0xFu) m |= Mask{1} << b;
  return m;
}

class Poly {
 public:
  struct Term {
    MonoKey key;
    Rational coef;
    bool operator==(const Term& o) const { return key == o.key && coef == o.coef; }
  };

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw Error(Errc::DimensionMismatch, "variable count outside 0..16");
  }

  static Poly constant(int nvars, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({0, c});
    return p;
  }

  static Poly variable(int nvars, int var) {
    Poly p(nvars);
    p.check_var(var);
    p.terms_.push_back({var_key(var), Rational(1)});
    return p;
  }

  static Poly monomial(int nvars, MonoKey key, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({key, c});
    return p;
  }

  /// Builds from unsorted (key, coef) pairs, merging duplicates.
  static Poly from_terms(int nvars, std::vector<Term> terms) {
    Poly p(nvars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().key == t.key)
        p.terms_.back().coef += t.coef;
      else
        p.terms_.push_back(std::move(t));
    }
    p.drop_zeros();
    return p;
  }

  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(MonoKey key) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, MonoKey k) { return t.key < k; });
    return (it != terms_.end() && it->key == key) ? it->coef : Rational(0);
  }

  int degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.key));
    return d;
  }

  int min_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = d < 0 ? total_degree(t.key) : std::min(d, total_degree(t.key));
    return d;
  }

  int degree_in(int var) const {
    check_var(var);
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, exponent(t.key, var));
    return d;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (total_degree(t.key) != total_degree(terms_.front().key)) return false;
    return true;
  }

  bool is_multiaffine() const {
    for (const auto& t : terms_)
      for (MonoKey k = t.key; k != 0; k >>= 4)
        if ((k & 0xFu) > 1) return false;
    return true;
  }

  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    for (int v = 1; v <= a.nvars_; ++v)
      if (a.degree_in(v) + b.degree_in(v) > 15)
        throw Error(Errc::DegreeOverflow, "product degree in x" + std::to_string(v) + " exceeds 15");
    std::unordered_map<MonoKey, Rational> acc;
    acc.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) acc[s.key + t.key] += s.coef * t.coef;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [k, c] : acc) terms.push_back({k, std::move(c)});
    return from_terms(a.nvars_, std::move(terms));
  }

  Poly scaled(const Rational& c) const {
    if (c == 0) return Poly(nvars_);
    Poly p = *this;
    for (auto& t : p.terms_) t.coef *= c;
    return p;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw Error(Errc::DimensionMismatch, "point has " + std::to_string(point.size()) + " coordinates, expected " +
                                               std::to_string(nvars_));
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coef;
      for (int var = 1; var <= nvars_; ++var)
        for (int e = exponent(t.key, var); e > 0; --e) v *= point[var - 1];
      sum += v;
    }
    return sum;
  }

  double evaluate(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw Error(Errc::DimensionMismatch, "point dimension");
    double sum = 0;
    for (const auto& t : terms_) {
      double v = t.coef.get_d();
      for (int var = 1; var <= nvars_; ++var)
        for (int e = exponent(t.key, var); e > 0; --e) v *= point[var - 1];
      sum += v;
    }
    return sum;
  }

  /// ∂/∂x_var.
  Poly partial(int var) const {
    check_var(var);
    std::vector<Term> out;
    for (const auto& t : terms_) {
      int e = exponent(t.key, var);
      if (e == 0) continue;
      out.push_back({with_exponent(t.key, var, e - 1), t.coef * e});
    }
    return from_terms(nvars_, std::move(out));
  }

  /// Sets x_var = value; nvars is preserved and x_var leaves the support.
  Poly substitute(int var, const Rational& value) const {
    check_var(var);
    std::vector<Term> out;
    for (const auto& t : terms_) {
      int e = exponent(t.key, var);
      Rational c = t.coef;
      for (int k = 0; k < e; ++k) c *= value;
      if (c != 0) out.push_back({with_exponent(t.key, var, 0), c});
    }
    return from_terms(nvars_, std::move(out));
  }

  /// Substitutes x_e = value for every element e of the mask.
  Poly substitute_all(Mask vars, const Rational& value) const {
    Poly p = *this;
    for (int e : elements_of(vars)) p = p.substitute(e, value);
    return p;
  }

  /// Terms whose total degree equals d.
  Poly homogeneous_part(int d) const {
    Poly p(nvars_);
    for (const auto& t : terms_)
      if (total_degree(t.key) == d) p.terms_.push_back(t);
    return p;
  }

  /// Renames variable v (1-based) to mapping[v-1] in a polynomial ring with
  /// `new_nvars` variables.
  Poly embed(int new_nvars, const std::vector<int>& mapping) const {
    if (static_cast<int>(mapping.size()) != nvars_) throw Error(Errc::DimensionMismatch, "embedding map size");
    std::vector<Term> out;
    for (const auto& t : terms_) {
      MonoKey k = 0;
      for (int v = 1; v <= nvars_; ++v) {
        int e = exponent(t.key, v);
        if (e == 0) continue;
        if (mapping[v - 1] < 1 || mapping[v - 1] > new_nvars) throw Error(Errc::DimensionMismatch, "embedding target");
        k = with_exponent(k, mapping[v - 1], exponent(k, mapping[v - 1]) + e);
      }
      out.push_back({k, t.coef});
    }
    return from_terms(new_nvars, std::move(out));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (i) s += " + ";
      const bool unit = terms_[i].coef == 1 && terms_[i].key != 0;
      if (!unit) s += terms_[i].coef.get_str();
      for (int v = 1; v <= nvars_; ++v) {
        int e = exponent(terms_[i].key, v);
        if (e == 0) continue;
        if (!s.empty() && s.back() != ' ') s += "*";
        s += "x" + std::to_string(v);
        if (e > 1) s += "^" + std::to_string(e);
      }
    }
    return s;
  }

  /// Inverse of str(): terms joined by " + ", each `[p/q*]x1^e1*x3...`.
  static Poly parse(const std::string& text, int nvars) {
    Poly out(nvars);
    std::string s = text;
    if (s == "0") return out;
    std::vector<Term> terms;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t next = s.find(" + ", pos);
      std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      std::vector<std::string> factors;
      std::stringstream ss(tok);
      std::string f;
      while (std::getline(ss, f, '*')) factors.push_back(f);
      if (factors.empty()) throw Error(Errc::ParseError, "empty term in '" + text + "'");
      const bool unit = !factors[0].empty() && factors[0][0] == 'x';
      Rational c = unit ? Rational(1) : parse_rational(factors[0]);
      MonoKey k = 0;
      for (std::size_t i = unit ? 0 : 1; i < factors.size(); ++i) {
        const std::string& fac = factors[i];
        if (fac.size() < 2 || fac[0] != 'x') throw Error(Errc::ParseError, "bad factor '" + fac + "'");
        auto caret = fac.find('^');
        int var = std::stoi(fac.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
        int e = caret == std::string::npos ? 1 : std::stoi(fac.substr(caret + 1));
        if (var < 1 || var > nvars) throw Error(Errc::ParseError, "variable index out of range in '" + fac + "'");
        int total = exponent(k, var) + e;
        if (total > 15) throw Error(Errc::DegreeOverflow, "exponent exceeds 15");
        k = with_exponent(k, var, total);
      }
      terms.push_back({k, c});
      if (next == std::string::npos) break;
      pos = next + 3;
    }
    return from_terms(nvars, std::move(terms));
  }

 private:
  static Poly combine(const Poly& a, const Poly& b, bool subtract) {
    a.check_same(b);
    Poly p(a.nvars_);
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].key < b.terms_[j].key)) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].key < a.terms_[i].key) {
        p.terms_.push_back({b.terms_[j].key, subtract ? Rational(-b.terms_[j].coef) : b.terms_[j].coef});
        ++j;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coef - b.terms_[j].coef) : Rational(a.terms_[i].coef + b.terms_[j].coef);
        if (c != 0) p.terms_.push_back({a.terms_[i].key, c});
        ++i;
        ++j;
      }
    }
    return p;
  }

  void drop_zeros() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.coef == 0; }),
                 terms_.end());
  }

  void check_var(int var) const {
    if (var < 1 || var > nvars_)
      throw Error(Errc::DimensionMismatch, "variable x" + std::to_string(var) + " outside 1.." + std::to_string(nvars_));
  }

  void check_same(const Poly& o) const {
    if (nvars_ != o.nvars_)
      throw Error(Errc::DimensionMismatch,
                  "polynomials in " + std::to_string(nvars_) + " and " + std::to_string(o.nvars_) + " variables");
  }

  int nvars_ = 0;
  std::vector<Term> terms_;  // sorted by key, no zero coefficients
};

/// Returns c with a = c * b, if one exists.
inline std::optional<Rational> proportionality(const Poly& a, const Poly& b) {
  if (a.nvars() != b.nvars() || a.size() != b.size()) return std::nullopt;
  if (a.is_zero()) return Rational(1);
  Rational c = a.terms().front().coef / b.terms().front().coef;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.terms()[i].key != b.terms()[i].key) return std::nullopt;
    if (a.terms()[i].coef != c * b.terms()[i].coef) return std::nullopt;
  }
  return c;
}

/// h_M = sum over bases B of prod_{i in B} x_i.
inline Poly basis_polynomial(const Matroid& m) {
  std::vector<Poly::Term> terms;
  terms.reserve(m.bases().size());
  for (Mask b : m.bases()) terms.push_back({key_of_mask(b), Rational(1)});
  return Poly::from_terms(m.size(), std::move(terms));
}

/// Δ_ij(h) = ∂_i h · ∂_j h − ∂_i∂_j h · h.
inline Poly rayleigh_difference(const Poly& h, int i, int j) {
  if (i == j) throw Error(Errc::EqualIndices, "Rayleigh difference needs i != j");
  if (!h.is_multiaffine()) throw Error(Errc::NotMultiaffine, "Rayleigh difference of a non-multiaffine polynomial");
  Poly hi = h.partial(i), hj = h.partial(j);
  return hi * hj - hi.partial(j) * h;
}

struct AbcdSplit {
  Poly a, b, c, d;
};

/// h = a·x_i·x_j + b·x_i + c·x_j + d with a, b, c, d free of x_i and x_j.
inline AbcdSplit abcd_decompose(const Poly& h, int i, int j) {
  if (i == j) throw Error(Errc::EqualIndices, "abcd split needs i != j");
  if (!h.is_multiaffine()) throw Error(Errc::NotMultiaffine, "abcd split of a non-multiaffine polynomial");
  std::vector<Poly::Term> a, b, c, d;
  for (const auto& t : h.terms()) {
    const int ei = exponent(t.key, i), ej = exponent(t.key, j);
    MonoKey rest = with_exponent(with_exponent(t.key, i, 0), j, 0);
    auto& bucket = ei ? (ej ? a : b) : (ej ? c : d);
    bucket.push_back({rest, t.coef});
  }
  const int n = h.nvars();
  return {Poly::from_terms(n, std::move(a)), Poly::from_terms(n, std::move(b)), Poly::from_terms(n, std::move(c)),
          Poly::from_terms(n, std::move(d))};
}

/// A face of the Newton polytope cut out by <functional, α> >= value.
struct SupportPolytopeFace {
  std::vector<long> functional;
  long value = 0;

  long apply(MonoKey key) const {
    long s = 0;
    for (std::size_t v = 0; v < functional.size(); ++v) s += functional[v] * exponent(key, static_cast<int>(v) + 1);
    return s;
  }

  /// The face minimizing `functional` over the support of f.
  static SupportPolytopeFace minimizing(const Poly& f, std::vector<long> functional) {
    if (f.is_zero()) throw Error(Errc::EmptyFace, "zero polynomial has no faces");
    SupportPolytopeFace face{std::move(functional), 0};
    long best = face.apply(f.terms().front().key);
    for (const auto& t : f.terms()) best = std::min(best, face.apply(t.key));
    face.value = best;
    return face;
  }

  /// The face maximizing `functional`, expressed with the negated functional.
  static SupportPolytopeFace maximizing(const Poly& f, std::vector<long> functional) {
    for (auto& a : functional) a = -a;
    return minimizing(f, std::move(functional));
  }

  /// Face {sum_{i in S} x_i = rk(S)} of a matroid polytope.
  static SupportPolytopeFace flat_face(int nvars, Mask flat, int flat_rank) {
    SupportPolytopeFace face{std::vector<long>(nvars, 0), -flat_rank};
    for (int e : elements_of(flat)) face.functional[e - 1] = -1;
    return face;
  }
};

/// f_F: the terms of f whose exponents lie on the face.
inline Poly facial_restriction(const Poly& f, const SupportPolytopeFace& face) {
  if (static_cast<int>(face.functional.size()) != f.nvars())
    throw Error(Errc::DimensionMismatch, "face functional length differs from variable count");
  std::vector<Poly::Term> kept;
  for (const auto& t : f.terms()) {
    long v = face.apply(t.key);
    if (v < face.value) throw Error(Errc::EmptyFace, "functional is not bounded below by the face value on the support");
    if (v == face.value) kept.push_back(t);
  }
  if (kept.empty()) throw Error(Errc::EmptyFace, "no support point attains the face value");
  return Poly::from_terms(f.nvars(), std::move(kept));
}

/// f_#: the lowest-degree part.
inline Poly initial_form(const Poly& f) {
  return facial_restriction(f, SupportPolytopeFace::minimizing(f, std::vector<long>(f.nvars(), 1)));
}

/// f^#: the highest-degree part.
inline Poly leading_form(const Poly& f) {
  return facial_restriction(f, SupportPolytopeFace::maximizing(f, std::vector<long>(f.nvars(), 1)));
}

/// Checks h = det(sum_i x_i a_i a_i^T) by Cauchy–Binet: the coefficient of
/// x^B must be det(a_i : i in B)^2 for every r-subset B, and h has no other
/// terms.
inline bool det_rank1_check(const Poly& h, const std::vector<std::vector<Rational>>& vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n != h.nvars()) throw Error(Errc::DimensionMismatch, "one vector per variable is required");
  if (n == 0) return h == Poly::constant(0, 1);
  const std::size_t r = vectors.front().size();
  for (const auto& v : vectors)
    if (v.size() != r) throw Error(Errc::DimensionMismatch, "vectors must share a common length");
  std::vector<Poly::Term> expected;
  for (Mask s : k_subsets(n, static_cast<int>(r))) {
    QMatrix a(r, r);
    auto idx = elements_of(s);
    for (std::size_t col = 0; col < r; ++col)
      for (std::size_t row = 0; row < r; ++row) a(row, col) = vectors[idx[col] - 1][row];
    Rational det = determinant(a);
    if (det != 0) expected.push_back({key_of_mask(s), det * det});
  }
  return Poly::from_terms(n, std::move(expected)) == h;
}

}  // namespace hpp
