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

// Searches for points where a Rayleigh difference is negative. Floating
// point only proposes candidates; every returned point is confirmed by exact
// evaluation.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/poly.hpp"
#include "hpp/rational.hpp"

namespace hpp {

struct NegativePointCertificate {
  int i = 0;
  int j = 0;
  std::vector<Rational> point;  // length n; coordinates i and j are unused
  Rational value;
};

struct NegSearchBudget {
  int grid_bound = 5;
  std::uint64_t max_grid_points = 2000000;
  int multistarts = 200;
  int descent_iterations = 400;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

/// Fast double evaluation over a subset of the variables.
class DenseEvaluator {
 public:
  DenseEvaluator(const Poly& p, std::vector<int> vars) : vars_(std::move(vars)) {
    const int k = static_cast<int>(vars_.size());
    for (const auto& t : p.terms()) {
      Term term;
      term.coef = to_double(t.coef);
      for (int idx = 0; idx < k; ++idx) {
        int e = exponent(t.key, vars_[idx]);
        if (e) term.factors.push_back({idx, e});
      }
      terms_.push_back(std::move(term));
    }
  }

  std::size_t dimension() const { return vars_.size(); }
  const std::vector<int>& vars() const { return vars_; }

  double operator()(const std::vector<double>& x) const {
    double s = 0;
    for (const auto& t : terms_) {
      double v = t.coef;
      for (auto [idx, e] : t.factors) v *= e == 1 ? x[idx] : std::pow(x[idx], e);
      s += v;
    }
    return s;
  }

  /// Value and gradient.
  double gradient(const std::vector<double>& x, std::vector<double>& g) const {
    g.assign(x.size(), 0.0);
    double s = 0;
    for (const auto& t : terms_) {
      double v = t.coef;
      for (auto [idx, e] : t.factors) v *= e == 1 ? x[idx] : std::pow(x[idx], e);
      s += v;
      for (auto [idx, e] : t.factors) {
        double d = t.coef;
        for (auto [idx2, e2] : t.factors) {
          if (idx2 == idx) d *= e2 == 1 ? 1.0 : e2 * std::pow(x[idx2], e2 - 1);
          else d *= e2 == 1 ? x[idx2] : std::pow(x[idx2], e2);
        }
        g[idx] += d;
      }
    }
    return s;
  }

 private:
  struct Term {
    double coef = 0;
    std::vector<std::pair<int, int>> factors;
  };
  std::vector<int> vars_;
  std::vector<Term> terms_;
};

inline std::vector<int> free_variables(int n, int i, int j) {
  std::vector<int> v;
  for (int k = 1; k <= n; ++k)
    if (k != i && k != j) v.push_back(k);
  return v;
}

/// Divides an integer vector by the gcd of its entries.
inline void make_primitive(std::vector<long>& v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::labs(x));
  if (g > 1)
    for (long& x : v) x /= g;
}

inline std::vector<Rational> embed_point(int n, const std::vector<int>& vars, const std::vector<long>& x) {
  std::vector<Rational> p(n, Rational(0));
  for (std::size_t k = 0; k < vars.size(); ++k) p[vars[k] - 1] = x[k];
  return p;
}

}  // namespace detail

/// Exact re-check of a negative-point certificate.
inline bool verify_negative_point(const Poly& h, const NegativePointCertificate& c) {
  if (static_cast<int>(c.point.size()) != h.nvars()) return false;
  const Rational v = rayleigh_difference(h, c.i, c.j).evaluate(c.point);
  return v < 0 && v == c.value;
}

/// Integer grid in {-B..B}^(n-2), then multistart descent on the unit
/// sphere; candidates are rounded and confirmed exactly.
inline std::optional<NegativePointCertificate> search_negative(const Poly& h, int i, int j,
                                                               const NegSearchBudget& budget = {}) {
  const int n = h.nvars();
  const Poly delta = rayleigh_difference(h, i, j);
  if (delta.is_zero()) return std::nullopt;
  const auto vars = detail::free_variables(n, i, j);
  const detail::DenseEvaluator eval(delta, vars);
  const int k = static_cast<int>(vars.size());

  auto confirm = [&](std::vector<long> x) -> std::optional<NegativePointCertificate> {
    detail::make_primitive(x);
    auto p = detail::embed_point(n, vars, x);
    Rational v = delta.evaluate(p);
    if (v < 0) return NegativePointCertificate{i, j, std::move(p), v};
    return std::nullopt;
  };

  // (1) Grid, lexicographic, first nonzero coordinate positive (delta has
  // even degree).
  const int b = budget.grid_bound;
  const std::uint64_t side = static_cast<std::uint64_t>(2 * b + 1);
  std::uint64_t total = 1;
  bool overflow = false;
  for (int c = 0; c < k; ++c) {
    if (total > budget.max_grid_points) overflow = true;
    total *= side;
  }
  const std::uint64_t stride = (overflow || total > budget.max_grid_points) ? total / budget.max_grid_points + 1 : 1;
  std::vector<double> xd(k);
  std::vector<long> xi(k);
  for (std::uint64_t code = 0; code < total; code += stride) {
    std::uint64_t rem = code;
    for (int c = k - 1; c >= 0; --c) {
      xi[c] = static_cast<long>(rem % side) - b;
      rem /= side;
    }
    auto first = std::find_if(xi.begin(), xi.end(), [](long v) { return v != 0; });
    if (first == xi.end() || *first < 0) continue;
    for (int c = 0; c < k; ++c) xd[c] = static_cast<double>(xi[c]);
    if (eval(xd) < -1e-9)
      if (auto cert = confirm(xi)) return cert;
  }

  // (2) Multistart descent of delta(x / |x|).
  std::mt19937_64 rng(budget.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> g;
  for (int start = 0; start < budget.multistarts; ++start) {
    std::vector<double> x(k);
    for (auto& v : x) v = gauss(rng);
    auto normalize = [](std::vector<double>& v) {
      double nrm = 0;
      for (double a : v) nrm += a * a;
      nrm = std::sqrt(nrm);
      for (double& a : v) a /= nrm;
    };
    normalize(x);
    double f = eval.gradient(x, g);
    double step = 0.1;
    for (int it = 0; it < budget.descent_iterations && step > 1e-12; ++it) {
      // Project the gradient onto the tangent space of the sphere.
      double radial = 0;
      for (int c = 0; c < k; ++c) radial += g[c] * x[c];
      std::vector<double> trial(k);
      for (int c = 0; c < k; ++c) trial[c] = x[c] - step * (g[c] - radial * x[c]);
      normalize(trial);
      double ft = eval(trial);
      if (ft < f) {
        x = trial;
        f = eval.gradient(x, g);
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    if (f >= 0) continue;
    for (double scale : {10.0, 100.0, 1000.0, 1e4, 1e5, 1e6}) {
      std::vector<long> xr(k);
      for (int c = 0; c < k; ++c) xr[c] = std::lround(x[c] * scale);
      if (std::all_of(xr.begin(), xr.end(), [](long v) { return v == 0; })) continue;
      if (auto cert = confirm(xr)) return cert;
    }
  }
  return std::nullopt;
}

/// First pair (i < j, lexicographic) with an exactly confirmed negative point.
inline std::optional<NegativePointCertificate> search_negative_any(const Poly& h, const NegSearchBudget& budget = {}) {
  for (int i = 1; i <= h.nvars(); ++i)
    for (int j = i + 1; j <= h.nvars(); ++j)
      if (auto c = search_negative(h, i, j, budget)) return c;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Relabeled evaluation of a fixed point

struct RelabeledNegative {
  int i = 0;  // image of the named pair under the relabeling
  int j = 0;
  std::vector<int> coordinates;  // coordinates[k] = variable receiving point[k]
  NegativePointCertificate certificate;
};

/// Looks for a relabeling under which the given point, listed for the
/// variables other than (pi, pj) in increasing order, makes Delta negative.
/// Tries every target pair and every assignment of the remaining variables.
inline std::optional<RelabeledNegative> find_relabeled_negative(const Poly& h, const std::vector<long>& point) {
  const int n = h.nvars();
  if (static_cast<int>(point.size()) != n - 2) throw Error(Errc::DimensionMismatch, "point must have n-2 coordinates");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const Poly delta = rayleigh_difference(h, i, j);
      if (delta.is_zero()) continue;
      auto vars = detail::free_variables(n, i, j);
      const detail::DenseEvaluator eval(delta, vars);
      std::vector<int> perm(vars.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::vector<double> x(vars.size());
      do {
        for (std::size_t k = 0; k < perm.size(); ++k) x[perm[k]] = static_cast<double>(point[k]);
        if (eval(x) >= 0) continue;
        std::vector<Rational> p(n, Rational(0));
        std::vector<int> coords(perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k) {
          coords[k] = vars[perm[k]];
          p[coords[k] - 1] = point[k];
        }
        Rational v = delta.evaluate(p);
        if (v < 0) return RelabeledNegative{i, j, coords, {i, j, p, v}};
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Nonnegative orthant

struct OrthantSamples {
  int grid_max = 2;          // grid {0..grid_max}^n
  int random_points = 2000;  // random integer points in [0, random_max]^n
  int random_max = 20;
  int multistarts = 50;      // projected descent restricted to x >= 0
  std::uint64_t seed = 0x0a7;
};

struct RayleighCounterexample {
  NegativePointCertificate certificate;
};

namespace detail {

/// Deterministic list of nonnegative integer sample points.
inline std::vector<std::vector<long>> orthant_points(int n, const OrthantSamples& s) {
  std::vector<std::vector<long>> pts;
  const long side = s.grid_max + 1;
  long total = 1;
  for (int c = 0; c < n; ++c) total *= side;
  if (total <= 200000)
    for (long code = 1; code < total; ++code) {
      std::vector<long> x(n);
      long rem = code;
      for (int c = n - 1; c >= 0; --c) {
        x[c] = rem % side;
        rem /= side;
      }
      pts.push_back(std::move(x));
    }
  std::mt19937_64 rng(s.seed);
  std::uniform_int_distribution<long> dist(0, s.random_max);
  for (int r = 0; r < s.random_points; ++r) {
    std::vector<long> x(n);
    for (auto& v : x) v = dist(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace detail

/// Samples the closed nonnegative orthant for every pair; the first exact
/// negative value found is returned.
inline std::optional<RayleighCounterexample> rayleigh_orthant_test(const Poly& h, const OrthantSamples& s = {}) {
  const int n = h.nvars();
  const auto pts = detail::orthant_points(n, s);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const Poly delta = rayleigh_difference(h, i, j);
      if (delta.is_zero()) continue;
      const detail::DenseEvaluator eval(delta, all);
      std::vector<double> x(n);
      auto confirm = [&](const std::vector<long>& xi) -> std::optional<RayleighCounterexample> {
        std::vector<Rational> p(xi.begin(), xi.end());
        Rational v = delta.evaluate(p);
        if (v < 0) return RayleighCounterexample{{i, j, p, v}};
        return std::nullopt;
      };
      for (const auto& xi : pts) {
        for (int c = 0; c < n; ++c) x[c] = static_cast<double>(xi[c]);
        if (eval(x) < 0)
          if (auto ce = confirm(xi)) return ce;
      }
      // Projected descent on the simplex slice sum x = 1, x >= 0.
      std::mt19937_64 rng(s.seed + static_cast<std::uint64_t>(i * 31 + j));
      std::exponential_distribution<double> expo(1.0);
      std::vector<double> g;
      for (int start = 0; start < s.multistarts; ++start) {
        for (auto& v : x) v = expo(rng);
        auto renorm = [](std::vector<double>& v) {
          double sum = 0;
          for (double& a : v) {
            a = std::max(a, 0.0);
            sum += a;
          }
          if (sum > 0)
            for (double& a : v) a /= sum;
        };
        renorm(x);
        double f = eval.gradient(x, g);
        double step = 0.05;
        for (int it = 0; it < 300 && step > 1e-12; ++it) {
          std::vector<double> trial(n);
          for (int c = 0; c < n; ++c) trial[c] = x[c] - step * g[c];
          renorm(trial);
          double ft = eval(trial);
          if (ft < f) {
            x = trial;
            f = eval.gradient(x, g);
            step *= 1.5;
          } else {
            step *= 0.5;
          }
        }
        if (f >= 0) continue;
        for (double scale : {10.0, 100.0, 1000.0, 1e4, 1e5}) {
          std::vector<long> xr(n);
          for (int c = 0; c < n; ++c) xr[c] = std::lround(x[c] * scale);
          if (auto ce = confirm(xr)) return ce;
        }
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Correlation ratios

struct CorrelationEstimate {
  bool any_valid = false;     // some sample had ad > 0 and bc > 0
  Rational sup_bc_over_ad;    // 0 when no valid sample
  Rational sup_ad_over_bc;
  int i = 0, j = 0;           // pair attaining sup bc/ad
  std::vector<Rational> point;
  bool bc_over_ad_exceeds_one() const { return sup_bc_over_ad > 1; }
  bool ad_over_bc_exceeds_one() const { return sup_ad_over_bc > 1; }
};

/// Ratios at sampled nonnegative points with ad > 0 and bc > 0. Doubles
/// pick the best sample per pair and orientation; the reported values are
/// exact at those samples.
inline CorrelationEstimate correlation_ratio_estimate(const Poly& h, const OrthantSamples& s = {}) {
  CorrelationEstimate est;
  const int n = h.nvars();
  const auto pts = detail::orthant_points(n, s);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 1);
  std::vector<double> x(n);
  bool have_bc = false, have_ad = false;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const auto split = abcd_decompose(h, i, j);
      if (split.a.is_zero() || split.b.is_zero() || split.c.is_zero() || split.d.is_zero()) continue;
      const detail::DenseEvaluator ea(split.a, all), eb(split.b, all), ec(split.c, all), ed(split.d, all);
      std::ptrdiff_t best1 = -1, best2 = -1;
      double r1 = 0, r2 = 0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        for (int c = 0; c < n; ++c) x[c] = static_cast<double>(pts[k][c]);
        const double ad = ea(x) * ed(x), bc = eb(x) * ec(x);
        if (ad <= 0.5 || bc <= 0.5) continue;  // integer points: values are integers
        if (best1 < 0 || bc / ad > r1) {
          r1 = bc / ad;
          best1 = static_cast<std::ptrdiff_t>(k);
        }
        if (best2 < 0 || ad / bc > r2) {
          r2 = ad / bc;
          best2 = static_cast<std::ptrdiff_t>(k);
        }
      }
      if (best1 < 0) continue;
      auto exact = [&](std::ptrdiff_t k, Rational& ad, Rational& bc) {
        std::vector<Rational> p(pts[k].begin(), pts[k].end());
        ad = split.a.evaluate(p) * split.d.evaluate(p);
        bc = split.b.evaluate(p) * split.c.evaluate(p);
        return p;
      };
      Rational ad, bc;
      auto p1 = exact(best1, ad, bc);
      if (ad > 0 && bc > 0 && (!have_bc || bc / ad > est.sup_bc_over_ad)) {
        est.sup_bc_over_ad = bc / ad;
        est.i = i;
        est.j = j;
        est.point = p1;
        have_bc = true;
      }
      exact(best2, ad, bc);
      if (ad > 0 && bc > 0 && (!have_ad || ad / bc > est.sup_ad_over_bc)) {
        est.sup_ad_over_bc = ad / bc;
        have_ad = true;
      }
      est.any_valid = have_bc || have_ad;
    }
  return est;
}

}  // namespace hpp
