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

// Exact real-rootedness of univariate rational polynomials and the
// {0,1}-direction hyperbolicity test for basis generating polynomials.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/poly.hpp"
#include "hpp/rational.hpp"

namespace hpp {

/// Dense univariate polynomial, constant term first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly from_ints(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long v : coeffs) c.emplace_back(v);
    return UniPoly(std::move(c));
  }

  /// Product of (t - root) over the given roots.
  static UniPoly from_roots(const std::vector<Rational>& roots) {
    UniPoly p(std::vector<Rational>{Rational(1)});
    for (const auto& r : roots) p = p * UniPoly(std::vector<Rational>{Rational(-r), Rational(1)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }

  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return UniPoly(std::move(d));
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }

  /// Quotient and remainder of a / b.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
    std::vector<Rational> rem = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {UniPoly(), a};
    std::vector<Rational> quot(a.degree() - db + 1, Rational(0));
    for (int k = a.degree(); k >= db; --k) {
      if (rem[k] == 0) continue;
      Rational f = rem[k] / b.leading();
      quot[k - db] = f;
      for (int i = 0; i <= db; ++i) rem[k - db + i] -= f * b.c_[i];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
  }

  /// Monic gcd.
  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) {
      Rational lead = a.leading();
      for (auto& x : a.c_) x /= lead;
    }
    return a;
  }

  Rational evaluate(const Rational& t) const {
    Rational v = 0;
    for (std::size_t k = c_.size(); k-- > 0;) v = v * t + c_[k];
    return v;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Number of distinct real roots, from the Sturm chain's sign variations at ±∞.
inline int sturm_real_root_count(const UniPoly& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "Sturm count of the zero polynomial");
  if (p.degree() == 0) return 0;
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    UniPoly r = UniPoly::divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    std::vector<Rational> neg = r.coeffs();
    for (auto& x : neg) x = -x;
    chain.emplace_back(std::move(neg));
  }
  auto variations = [&](bool at_plus) {
    int count = 0, prev = 0;
    for (const auto& q : chain) {
      int s = sgn(q.leading());
      if (!at_plus && (q.degree() % 2 == 1)) s = -s;
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  };
  return variations(false) - variations(true);
}

/// p / gcd(p, p').
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree part of the zero polynomial");
  if (p.degree() == 0) return p;
  UniPoly g = UniPoly::gcd(p, p.derivative());
  return UniPoly::divmod(p, g).first;
}

struct RealRootReport {
  int squarefree_degree = 0;
  int real_roots = 0;  // distinct real roots
  bool real_rooted() const { return real_roots == squarefree_degree; }
};

inline RealRootReport real_root_report(const UniPoly& p) {
  UniPoly q = squarefree_part(p);
  return {q.degree(), sturm_real_root_count(q)};
}

/// All roots real (with multiplicity) iff the squarefree part has as many
/// distinct real roots as its degree.
inline bool is_real_rooted(const UniPoly& p) { return real_root_report(p).real_rooted(); }

/// Coefficients of t -> h(e·t − v).
inline UniPoly restrict_line(const Poly& h, const std::vector<Rational>& e, const std::vector<Rational>& v) {
  if (static_cast<int>(e.size()) != h.nvars() || static_cast<int>(v.size()) != h.nvars())
    throw Error(Errc::DimensionMismatch, "direction vectors must match the variable count");
  const int deg = std::max(h.degree(), 0);
  std::vector<Rational> acc(deg + 1, Rational(0));
  for (const auto& term : h.terms()) {
    std::vector<Rational> prod{term.coef};
    for (int var = 1; var <= h.nvars(); ++var) {
      for (int k = exponent(term.key, var); k > 0; --k) {
        std::vector<Rational> next(prod.size() + 1, Rational(0));
        for (std::size_t i = 0; i < prod.size(); ++i) {
          next[i] -= prod[i] * v[var - 1];
          next[i + 1] += prod[i] * e[var - 1];
        }
        prod = std::move(next);
      }
    }
    for (std::size_t i = 0; i < prod.size(); ++i) acc[i] += prod[i];
  }
  return UniPoly(std::move(acc));
}

struct NonRealWitness {
  std::vector<int> e;
  std::vector<int> v;
  int degree = 0;           // degree of the squarefree part
  int real_root_count = 0;  // its distinct real roots, < degree
};

enum class PairConvention {
  HNonzero,  // e ranges over {0,1}^n with h(e) != 0
  ENonzero,  // e ranges over {0,1}^n \ {0}, degenerate restrictions included
};

namespace detail {

/// h(e·t − v) for 0/1 vectors and a multiaffine h with integer coefficients.
/// Each variable contributes t, t−1, −1 or 0 depending on (e_k, v_k).
class ZeroOneRestrictor {
 public:
  explicit ZeroOneRestrictor(const Poly& h) : n_(h.nvars()), deg_(std::max(h.degree(), 0)) {
    if (!h.is_multiaffine()) throw Error(Errc::NotMultiaffine, "hyperbolicity sampling expects a multiaffine h");
    for (const auto& t : h.terms()) {
      if (t.coef.get_den() != 1 || !t.coef.get_num().fits_slong_p())
        throw Error(Errc::NumericFailure, "hyperbolicity sampling expects small integer coefficients");
      terms_.push_back({mask_of_key(t.key), t.coef.get_num().get_si()});
    }
    // binom[b][k] for (t-1)^b.
    binom_.assign(deg_ + 1, std::vector<long>(deg_ + 1, 0));
    for (int b = 0; b <= deg_; ++b) {
      binom_[b][0] = 1;
      for (int k = 1; k <= b; ++k) binom_[b][k] = binom_[b - 1][k - 1] + (k <= b - 1 ? binom_[b - 1][k] : 0);
    }
  }

  /// Integer coefficients of h(e·t − v), constant term first.
  std::vector<long> operator()(Mask e, Mask v) const {
    std::vector<long> acc(deg_ + 1, 0);
    const Mask zero = ~(e | v);           // factor 0
    const Mask t_only = e & ~v;           // factor t
    const Mask t_minus_one = e & v;       // factor t - 1
    const Mask minus_one = ~e & v;        // factor -1
    for (const auto& [b, c] : terms_) {
      if (b & zero & full_mask(n_)) continue;
      const int a = popcount(b & t_only);
      const int m = popcount(b & t_minus_one);
      const long s = (popcount(b & minus_one) % 2 ? -c : c);
      // s * t^a * (t-1)^m
      for (int k = 0; k <= m; ++k) {
        long coef = binom_[m][k] * (((m - k) % 2) ? -1 : 1);
        acc[a + k] += s * coef;
      }
    }
    return acc;
  }

 private:
  int n_;
  int deg_;
  std::vector<std::pair<Mask, long>> terms_;
  std::vector<std::vector<long>> binom_;
};

inline std::vector<int> bits_to_vector(Mask m, int n) {
  std::vector<int> out(n);
  for (int k = 0; k < n; ++k) out[k] = (m >> k) & 1u;
  return out;
}

}  // namespace detail

struct HyperbolicityScan {
  std::uint64_t pairs_tested = 0;
  std::uint64_t failing_pairs = 0;
  std::optional<NonRealWitness> first_witness;
};

/// Exhaustive scan over (e, v) in {0,1}^n × {0,1}^n in lexicographic mask
/// order (e outer, v inner). Stops at the first failure unless count_all.
inline HyperbolicityScan hyperbolicity_scan(const Poly& h, bool count_all,
                                            PairConvention convention = PairConvention::HNonzero) {
  const int n = h.nvars();
  if (n > 12) throw Error(Errc::DimensionMismatch, "exhaustive {0,1} scan limited to 12 variables");
  detail::ZeroOneRestrictor restrict(h);
  HyperbolicityScan scan;
  const Mask limit = Mask{1} << n;
  for (Mask e = 0; e < limit; ++e) {
    if (convention == PairConvention::ENonzero && e == 0) continue;
    // h(e) is the leading coefficient of h(e·t − v) for homogeneous h.
    const auto at_zero_v = restrict(e, 0);
    if (convention == PairConvention::HNonzero && at_zero_v.back() == 0) continue;
    for (Mask v = 0; v < limit; ++v) {
      auto ints = restrict(e, v);
      std::vector<Rational> coeffs(ints.begin(), ints.end());
      UniPoly p(std::move(coeffs));
      ++scan.pairs_tested;
      if (p.is_zero()) continue;
      auto report = real_root_report(p);
      if (report.real_rooted()) continue;
      ++scan.failing_pairs;
      if (!scan.first_witness)
        scan.first_witness = NonRealWitness{detail::bits_to_vector(e, n), detail::bits_to_vector(v, n),
                                            report.squarefree_degree, report.real_roots};
      if (!count_all) return scan;
    }
  }
  return scan;
}

/// First failing pair in the default order, or nullopt when every pair passes.
inline std::optional<NonRealWitness> hyperbolicity_sample_test(const Poly& h) {
  return hyperbolicity_scan(h, false).first_witness;
}

/// Tests an explicit list of (e, v) pairs.
inline std::optional<NonRealWitness> hyperbolicity_sample_test(
    const Poly& h, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs) {
  for (const auto& [e, v] : pairs) {
    std::vector<Rational> eq(e.begin(), e.end()), vq(v.begin(), v.end());
    UniPoly p = restrict_line(h, eq, vq);
    if (p.is_zero()) continue;
    auto report = real_root_report(p);
    if (!report.real_rooted()) return NonRealWitness{e, v, report.squarefree_degree, report.real_roots};
  }
  return std::nullopt;
}

inline std::uint64_t count_failing_pairs(const Poly& h, PairConvention convention = PairConvention::HNonzero) {
  return hyperbolicity_scan(h, true, convention).failing_pairs;
}

/// Re-checks a stored witness exactly.
inline bool verify_nonreal_witness(const Poly& h, const NonRealWitness& w) {
  std::vector<Rational> eq(w.e.begin(), w.e.end()), vq(w.v.begin(), w.v.end());
  UniPoly p = restrict_line(h, eq, vq);
  if (p.is_zero()) return false;
  auto report = real_root_report(p);
  return !report.real_rooted() && report.squarefree_degree == w.degree && report.real_roots == w.real_root_count;
}

}  // namespace hpp
