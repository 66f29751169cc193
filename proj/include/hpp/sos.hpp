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

// Sum-of-squares certificates for Rayleigh differences.
//
// A Gram matrix G over the monomial vector m satisfies m^T G m = delta.
// Entries are grouped by the product monomial x^a x^b they feed; each
// diagonal entry sits alone in its group, so the diagonal is fixed by delta
// and the feasible set is bounded. The numeric side maximizes the smallest
// eigenvalue over the affine slice, the exact side rounds, projects back and
// checks with a rational LDL^T.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/linalg.hpp"
#include "hpp/poly.hpp"
#include "hpp/rational.hpp"

namespace hpp {

/// Multiaffine monomials of the given degree in the variables other than i, j.
inline std::vector<MonoKey> monomial_basis(int nvars, int i, int j, int degree) {
  std::vector<MonoKey> out;
  if (degree < 0) return out;
  const Mask others = full_mask(nvars) & ~element_bit(i) & ~element_bit(j);
  const int k = popcount(others);
  for (Mask s : k_subsets(k, degree)) {
    Mask m = 0;
    int idx = 1;
    for (int e : elements_of(others)) {
      if (s & element_bit(idx)) m |= element_bit(e);
      ++idx;
    }
    out.push_back(key_of_mask(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis for a Rayleigh difference of a degree-r form: degree r-1, read off
/// delta's degree 2r-2. The zero polynomial gets an empty basis.
inline std::vector<MonoKey> monomial_basis(const Poly& delta, int i, int j) {
  if (delta.is_zero()) return {};
  return monomial_basis(delta.nvars(), i, j, delta.degree() / 2);
}

struct GramSystem {
  int nvars = 0;
  int i = 0;
  int j = 0;
  std::vector<MonoKey> monomials;
  Poly target;
  QMatrix g0;
  std::vector<QMatrix> kernel;
};

namespace detail {

/// Gram entries (a <= b) grouped by their product monomial.
struct GramGroups {
  std::vector<MonoKey> products;
  std::vector<std::vector<std::pair<int, int>>> entries;
  std::vector<Rational> coef;
  std::vector<int> diagonal_group;  // group index of (a, a)
};

inline GramGroups gram_groups(const std::vector<MonoKey>& mono, const Poly& target) {
  GramGroups g;
  std::map<MonoKey, int> index;
  const int n = static_cast<int>(mono.size());
  g.diagonal_group.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const MonoKey p = mono[a] + mono[b];  // exponents stay <= 2
      auto [it, fresh] = index.emplace(p, static_cast<int>(g.products.size()));
      if (fresh) {
        g.products.push_back(p);
        g.entries.emplace_back();
        g.coef.push_back(target.coefficient(p));
      }
      g.entries[it->second].push_back({a, b});
      if (a == b) g.diagonal_group[a] = it->second;
    }
  for (const auto& t : target.terms())
    if (!index.count(t.key))
      throw Error(Errc::NotRepresentable, "monomial " + Poly::monomial(target.nvars(), t.key, 1).str() +
                                              " is not a product of two basis monomials");
  return g;
}

inline QMatrix symmetric_unit(std::size_t n, int a, int b) {
  QMatrix m(n, n);
  m(a, b) = 1;
  m(b, a) = 1;
  return m;
}

}  // namespace detail

/// Gram parametrization of delta over the given monomials.
inline GramSystem gram_system(const Poly& delta, int i, int j, std::vector<MonoKey> monomials) {
  GramSystem sys;
  sys.nvars = delta.nvars();
  sys.i = i;
  sys.j = j;
  sys.monomials = std::move(monomials);
  sys.target = delta;
  const std::size_t n = sys.monomials.size();
  auto groups = detail::gram_groups(sys.monomials, delta);

  // Equal split of each coefficient over its entries; an off-diagonal entry
  // is counted twice in m^T G m.
  sys.g0 = QMatrix(n, n);
  for (std::size_t g = 0; g < groups.products.size(); ++g) {
    const auto& ent = groups.entries[g];
    if (groups.coef[g] == 0) continue;
    Rational weight = 0;
    for (auto [a, b] : ent) weight += (a == b) ? 1 : 2;
    const Rational share = groups.coef[g] / weight;
    for (auto [a, b] : ent) {
      sys.g0(a, b) = share;
      sys.g0(b, a) = share;
    }
  }

  // Kernel: nullspace of the map from upper-triangular entries to
  // coefficients.
  std::vector<std::pair<int, int>> cols;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) cols.push_back({static_cast<int>(a), static_cast<int>(b)});
  std::map<std::pair<int, int>, std::size_t> row_of;
  for (std::size_t g = 0; g < groups.entries.size(); ++g)
    for (auto e : groups.entries[g]) row_of[e] = g;
  QMatrix map(groups.products.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    map(row_of[cols[c]], c) = cols[c].first == cols[c].second ? 1 : 2;
  for (const auto& v : nullspace(map)) {
    QMatrix k(n, n);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (v[c] == 0) continue;
      k(cols[c].first, cols[c].second) = v[c];
      k(cols[c].second, cols[c].first) = v[c];
    }
    sys.kernel.push_back(std::move(k));
  }
  return sys;
}

inline GramSystem gram_system(const Poly& delta, int i, int j) {
  return gram_system(delta, i, j, monomial_basis(delta, i, j));
}

/// m^T G m as a polynomial.
inline Poly gram_polynomial(int nvars, const std::vector<MonoKey>& mono, const QMatrix& g) {
  std::vector<Poly::Term> terms;
  for (std::size_t a = 0; a < mono.size(); ++a)
    for (std::size_t b = a; b < mono.size(); ++b) {
      if (g(a, b) == 0) continue;
      terms.push_back({mono[a] + mono[b], a == b ? g(a, b) : Rational(2 * g(a, b))});
    }
  return Poly::from_terms(nvars, std::move(terms));
}

// ---------------------------------------------------------------------------
// Numeric side: maximize the smallest eigenvalue of an affine matrix family

namespace detail {

/// Symmetric matrix stored as (row, col, value) with both triangles present.
using SparseSym = std::vector<std::tuple<int, int, double>>;

/// maximize t  s.t.  F0 + sum_k z_k F_k - t I  is positive semidefinite,
///                    eq z = rhs.
struct LmiProblem {
  int n = 0;
  Eigen::MatrixXd f0;
  std::vector<SparseSym> f;
  Eigen::MatrixXd eq;
  Eigen::VectorXd rhs;
};

struct LmiResult {
  Eigen::VectorXd z;
  double t = 0.0;
  Eigen::MatrixXd value;  // F0 + sum z_k F_k
  int newton_steps = 0;
};

inline Eigen::MatrixXd lmi_value(const LmiProblem& p, const Eigen::VectorXd& z) {
  Eigen::MatrixXd m = p.f0;
  for (std::size_t k = 0; k < p.f.size(); ++k)
    for (const auto& [a, b, u] : p.f[k]) m(a, b) += z[static_cast<Eigen::Index>(k)] * u;
  return m;
}

struct BarrierOptions {
  double gap = 1e-9;     // stop once n / s is below gap * scale
  int max_newton = 400;  // total Newton steps
};

/// Sparse basis of {z : eq z = 0}: one vector per non-pivot column of the
/// row-reduced constraint matrix.
inline std::vector<std::vector<std::pair<Eigen::Index, double>>> constraint_nullspace(const Eigen::MatrixXd& eq,
                                                                                      Eigen::Index cols) {
  Eigen::MatrixXd r = eq;
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < cols && row < r.rows(); ++c) {
    Eigen::Index best = row;
    for (Eigen::Index i = row + 1; i < r.rows(); ++i)
      if (std::abs(r(i, c)) > std::abs(r(best, c))) best = i;
    if (std::abs(r(best, c)) < 1e-12) continue;
    r.row(best).swap(r.row(row));
    r.row(row) /= r(row, c);
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      if (i != row && r(i, c) != 0.0) r.row(i) -= r(i, c) * r.row(row);
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<std::pair<Eigen::Index, double>>> basis;
  for (Eigen::Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<std::pair<Eigen::Index, double>> v{{f, 1.0}};
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
      if (std::abs(r(static_cast<Eigen::Index>(k), f)) > 1e-15) v.push_back({pivot_col[k], -r(static_cast<Eigen::Index>(k), f)});
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Log-barrier path following from a z with eq z = rhs. The constraints are
/// eliminated, so every iterate satisfies them up to rounding of z0.
inline LmiResult maximize_min_eigenvalue(const LmiProblem& p, Eigen::VectorXd z0, const BarrierOptions& opt = {}) {
  using Eigen::Index;
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const Index n = p.n;
  LmiResult res;
  res.z = z0;
  if (n == 0) return res;

  const auto basis = p.eq.rows() > 0 ? constraint_nullspace(p.eq, static_cast<Index>(p.f.size()))
                                      : [&] {
                                          std::vector<std::vector<std::pair<Index, double>>> b;
                                          for (std::size_t k = 0; k < p.f.size(); ++k) b.push_back({{static_cast<Index>(k), 1.0}});
                                          return b;
                                        }();
  // Directions F'_u = sum_k N_ku F_k.
  std::vector<SparseSym> dir;
  for (const auto& v : basis) {
    std::map<std::pair<int, int>, double> acc;
    for (auto [k, coef] : v)
      for (const auto& [a, b, u] : p.f[static_cast<std::size_t>(k)]) acc[{a, b}] += coef * u;
    SparseSym s;
    for (const auto& [ab, u] : acc)
      if (u != 0.0) s.push_back({ab.first, ab.second, u});
    dir.push_back(std::move(s));
  }
  const MatrixXd base = lmi_value(p, z0);
  const Index kz = static_cast<Index>(dir.size());
  const Index dim = kz + 1;
  auto value = [&](const VectorXd& u) {
    MatrixXd m = base;
    for (Index k = 0; k < kz; ++k)
      for (const auto& [a, b, c] : dir[static_cast<std::size_t>(k)]) m(a, b) += u[k] * c;
    return m;
  };

  VectorXd u = VectorXd::Zero(kz);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(base, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, base.cwiseAbs().maxCoeff());
  double t = es.eigenvalues()[0] - scale;

  auto barrier = [&](const VectorXd& uu, double tt, double s, bool& ok) {
    MatrixXd sm = value(uu);
    sm.diagonal().array() -= tt;
    Eigen::LLT<MatrixXd> llt(sm);
    ok = llt.info() == Eigen::Success;
    if (!ok) return 0.0;
    const double logdet = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    return -s * tt - logdet;
  };

  double s = 1.0 / scale;
  int steps = 0;
  while (steps < opt.max_newton) {
    for (int inner = 0; inner < 60 && steps < opt.max_newton; ++inner, ++steps) {
      MatrixXd sm = value(u);
      sm.diagonal().array() -= t;
      Eigen::LLT<MatrixXd> llt(sm);
      if (llt.info() != Eigen::Success) break;
      MatrixXd w = llt.solve(MatrixXd::Identity(n, n));
      MatrixXd w2 = w * w;
      VectorXd g(dim);
      MatrixXd h = MatrixXd::Zero(dim, dim);
      std::vector<MatrixXd> pk(static_cast<std::size_t>(kz));
      for (Index k = 0; k < kz; ++k) {
        double gk = 0, hkt = 0;
        MatrixXd acc = MatrixXd::Zero(n, n);
        for (const auto& [a, b, c] : dir[static_cast<std::size_t>(k)]) {
          gk -= c * w(b, a);
          hkt -= c * w2(b, a);
          acc.noalias() += c * w.col(a) * w.row(b);
        }
        g[k] = gk;
        h(k, kz) = hkt;
        h(kz, k) = hkt;
        pk[static_cast<std::size_t>(k)] = std::move(acc);
      }
      for (Index k = 0; k < kz; ++k)
        for (Index l = k; l < kz; ++l) {
          double v = 0;
          for (const auto& [c, d, x] : dir[static_cast<std::size_t>(l)]) v += x * pk[static_cast<std::size_t>(k)](d, c);
          h(k, l) = v;
          h(l, k) = v;
        }
      g[kz] = -s + w.trace();
      h(kz, kz) = w2.trace();

      Eigen::LDLT<MatrixXd> ldlt(h);
      VectorXd dx = ldlt.solve(-g);
      const double decrement = -g.dot(dx);
      if (!(decrement >= 0) || decrement / 2 < 1e-10) break;
      bool ok = false;
      const double f0 = barrier(u, t, s, ok);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        double fn = barrier(u + alpha * dx.head(kz), t + alpha * dx[kz], s, ok);
        if (ok && fn <= f0 - 0.25 * alpha * decrement) {
          moved = true;
          break;
        }
      }
      if (!moved) break;
      u += alpha * dx.head(kz);
      t += alpha * dx[kz];
    }
    if (static_cast<double>(n) / s < opt.gap * scale) break;
    s *= 10.0;
  }
  for (Index k = 0; k < kz; ++k)
    for (auto [idx, coef] : basis[static_cast<std::size_t>(k)]) res.z[idx] += coef * u[k];
  res.value = value(u);
  es.compute(res.value, Eigen::EigenvaluesOnly);
  res.t = es.eigenvalues()[0];
  res.newton_steps = steps;
  return res;
}

}  // namespace detail

struct SdpOptions {
  double tol = 1e-9;
  detail::BarrierOptions barrier;
};

struct SdpResult {
  bool feasible = false;        // lambda_min >= -tol on the reduced face
  double lambda_min = 0.0;      // over the monomials with nonzero square coefficient
  double residual = 0.0;        // max affine violation
  Eigen::MatrixXd gram;         // full size, zero rows for dropped monomials
  std::vector<int> kept;
  bool empty_face = false;      // some coefficient has no admissible entry left
};

namespace detail {

/// The Gram problem restricted to monomials whose square appears in delta;
/// a PSD Gram matrix vanishes on the rows of the others.
struct ReducedProblem {
  std::vector<int> kept;
  std::vector<int> local;  // full index -> reduced, or -1
  std::vector<Rational> diag;
  std::vector<std::vector<std::pair<int, int>>> groups;  // off-diagonal, reduced coordinates
  std::vector<Rational> half_coef;
  bool empty_face = false;
};

inline ReducedProblem reduce(const GramGroups& gg, std::size_t nmono) {
  ReducedProblem rp;
  const int n = static_cast<int>(nmono);
  rp.local.assign(n, -1);
  for (int a = 0; a < n; ++a)
    if (gg.coef[gg.diagonal_group[a]] != 0) {
      rp.local[a] = static_cast<int>(rp.kept.size());
      rp.kept.push_back(a);
      rp.diag.push_back(gg.coef[gg.diagonal_group[a]]);
    }
  for (std::size_t g = 0; g < gg.products.size(); ++g) {
    std::vector<std::pair<int, int>> ent;
    bool diagonal = false;
    for (auto [a, b] : gg.entries[g]) {
      if (a == b) diagonal = true;
      else if (rp.local[a] >= 0 && rp.local[b] >= 0) ent.push_back({rp.local[a], rp.local[b]});
    }
    if (diagonal) continue;
    if (ent.empty()) {
      if (gg.coef[g] != 0) rp.empty_face = true;
      continue;
    }
    rp.groups.push_back(std::move(ent));
    rp.half_coef.push_back(gg.coef[g] / 2);
  }
  return rp;
}

inline LmiProblem primal_lmi(const ReducedProblem& rp, Eigen::VectorXd& z0) {
  LmiProblem p;
  p.n = static_cast<int>(rp.kept.size());
  p.f0 = Eigen::MatrixXd::Zero(p.n, p.n);
  for (int a = 0; a < p.n; ++a) p.f0(a, a) = to_double(rp.diag[a]);
  std::size_t total = 0;
  for (const auto& g : rp.groups) total += g.size();
  p.eq = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rp.groups.size()), static_cast<Eigen::Index>(total));
  p.rhs = Eigen::VectorXd(static_cast<Eigen::Index>(rp.groups.size()));
  z0 = Eigen::VectorXd(static_cast<Eigen::Index>(total));
  Eigen::Index k = 0;
  for (std::size_t gi = 0; gi < rp.groups.size(); ++gi) {
    const double half = to_double(rp.half_coef[gi]);
    p.rhs[static_cast<Eigen::Index>(gi)] = half;
    for (auto [a, b] : rp.groups[gi]) {
      p.f.push_back({{a, b, 1.0}, {b, a, 1.0}});
      p.eq(static_cast<Eigen::Index>(gi), k) = 1.0;
      z0[k] = half / static_cast<double>(rp.groups[gi].size());
      ++k;
    }
  }
  return p;
}

/// Reduced-row-echelon rational basis of the span of the columns of nv
/// (numeric null vectors), entries rounded with the given denominator.
inline std::vector<std::vector<Rational>> rational_span(const Eigen::MatrixXd& nv, const Integer& den) {
  Eigen::MatrixXd r = nv.transpose();
  const Eigen::Index rows = r.rows(), cols = r.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index it = 0; it < rows; ++it) {
    Eigen::Index pr = 0, pc = 0;
    double best = 0;
    for (Eigen::Index i = row; i < rows; ++i)
      for (Eigen::Index c = 0; c < cols; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end() && std::abs(r(i, c)) > best) {
          best = std::abs(r(i, c));
          pr = i;
          pc = c;
        }
    if (best < 1e-9) break;
    r.row(pr).swap(r.row(row));
    r.row(row) /= r(row, pc);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != row) r.row(i) -= r(i, pc) * r.row(row);
    pivots.push_back(pc);
    ++row;
  }
  std::vector<std::vector<Rational>> out;
  for (Eigen::Index i = 0; i < row; ++i) {
    std::vector<Rational> v(static_cast<std::size_t>(cols));
    for (Eigen::Index c = 0; c < cols; ++c) v[static_cast<std::size_t>(c)] = best_rational(r(i, c), den);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Numeric search for a PSD Gram matrix with the largest smallest eigenvalue.
inline SdpResult sdp_feasible(const GramSystem& sys, const SdpOptions& opt = {}) {
  SdpResult out;
  const auto gg = detail::gram_groups(sys.monomials, sys.target);
  const auto rp = detail::reduce(gg, sys.monomials.size());
  out.kept = rp.kept;
  out.empty_face = rp.empty_face;
  const auto full = static_cast<Eigen::Index>(sys.monomials.size());
  out.gram = Eigen::MatrixXd::Zero(full, full);
  if (rp.empty_face) {
    out.lambda_min = -std::numeric_limits<double>::infinity();
    return out;
  }
  if (rp.kept.empty()) {
    out.feasible = true;
    return out;
  }
  Eigen::VectorXd z0;
  auto lmi = detail::primal_lmi(rp, z0);
  auto res = detail::maximize_min_eigenvalue(lmi, z0, opt.barrier);
  out.lambda_min = res.t;
  out.feasible = res.t >= -opt.tol;
  for (std::size_t a = 0; a < rp.kept.size(); ++a)
    for (std::size_t b = 0; b < rp.kept.size(); ++b)
      out.gram(rp.kept[a], rp.kept[b]) = res.value(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  out.residual = lmi.rhs.size() ? (lmi.eq * res.z - lmi.rhs).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Exact certificates

struct SOSCertificate {
  int i = 0;
  int j = 0;
  int nvars = 0;
  std::vector<MonoKey> monomials;
  QMatrix gram;
  LdlResult ldl;
};

struct DualPSDCertificate {
  int i = 0;
  int j = 0;
  QMatrix a;
  LdlResult ldl;
};

struct RationalizeOptions {
  Integer first_denominator = 1000000;
  Integer last_denominator = Integer("1000000000000");
  long escalation = 100;
};

namespace detail {

/// Rounds the free entries, then moves them to the nearest point (in the
/// Euclidean norm on entries) of the affine set cut out by the group sums
/// and by G v = 0 for each v in null. Returns the reduced Gram matrix.
inline std::optional<QMatrix> exact_projection(const ReducedProblem& rp, const Eigen::MatrixXd& approx,
                                               const Integer& den, const std::vector<std::vector<Rational>>& null) {
  const std::size_t n = rp.kept.size();
  std::vector<std::pair<int, int>> vars;
  std::vector<std::size_t> group_of;
  for (std::size_t gi = 0; gi < rp.groups.size(); ++gi)
    for (auto e : rp.groups[gi]) {
      vars.push_back(e);
      group_of.push_back(gi);
    }
  std::vector<Rational> x(vars.size());
  for (std::size_t k = 0; k < vars.size(); ++k) x[k] = best_rational(approx(vars[k].first, vars[k].second), den);

  QMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a) g(a, a) = rp.diag[a];
  auto fill = [&] {
    for (std::size_t k = 0; k < vars.size(); ++k) {
      g(vars[k].first, vars[k].second) = x[k];
      g(vars[k].second, vars[k].first) = x[k];
    }
  };

  if (null.empty()) {
    // Groups are disjoint: the projection is a uniform shift per group.
    std::vector<Rational> sum(rp.groups.size());
    for (std::size_t k = 0; k < vars.size(); ++k) sum[group_of[k]] += x[k];
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto gi = group_of[k];
      x[k] += (rp.half_coef[gi] - sum[gi]) / static_cast<long>(rp.groups[gi].size());
    }
    fill();
    return g;
  }

  // Constraint rows: group sums, then (G v)_a = 0.
  const std::size_t rows = rp.groups.size() + null.size() * n;
  QMatrix c(rows, vars.size());
  std::vector<Rational> d(rows);
  for (std::size_t k = 0; k < vars.size(); ++k) c(group_of[k], k) = 1;
  for (std::size_t gi = 0; gi < rp.groups.size(); ++gi) d[gi] = rp.half_coef[gi];
  for (std::size_t l = 0; l < null.size(); ++l) {
    const std::size_t base = rp.groups.size() + l * n;
    for (std::size_t a = 0; a < n; ++a) d[base + a] = -rp.diag[a] * null[l][a];
    for (std::size_t k = 0; k < vars.size(); ++k) {
      auto [a, b] = vars[k];
      c(base + a, k) += null[l][b];
      c(base + b, k) += null[l][a];
    }
  }
  // x <- x + C^T w with (C C^T) w = d - C x.
  std::vector<Rational> resid(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Rational s = d[r];
    for (std::size_t k = 0; k < vars.size(); ++k)
      if (c(r, k) != 0) s -= c(r, k) * x[k];
    resid[r] = s;
  }
  QMatrix cct(rows, rows);
  for (std::size_t r1 = 0; r1 < rows; ++r1)
    for (std::size_t r2 = r1; r2 < rows; ++r2) {
      Rational s = 0;
      for (std::size_t k = 0; k < vars.size(); ++k)
        if (c(r1, k) != 0 && c(r2, k) != 0) s += c(r1, k) * c(r2, k);
      cct(r1, r2) = s;
      cct(r2, r1) = s;
    }
  auto w = solve_linear(cct, resid);
  if (!w) return std::nullopt;
  for (std::size_t k = 0; k < vars.size(); ++k)
    for (std::size_t r = 0; r < rows; ++r)
      if (c(r, k) != 0 && (*w)[r] != 0) x[k] += c(r, k) * (*w)[r];
  fill();
  return g;
}

inline QMatrix expand(const ReducedProblem& rp, const QMatrix& reduced, std::size_t full) {
  QMatrix g(full, full);
  for (std::size_t a = 0; a < rp.kept.size(); ++a)
    for (std::size_t b = 0; b < rp.kept.size(); ++b) g(rp.kept[a], rp.kept[b]) = reduced(a, b);
  return g;
}

}  // namespace detail

/// Rounds a numeric Gram matrix, restores the linear constraints exactly and
/// checks positive semidefiniteness exactly. When plain rounding fails, the
/// near-null eigenvectors of the numeric solution are rationalized and
/// imposed as exact constraints G v = 0.
inline std::optional<SOSCertificate> rationalize_and_verify(const GramSystem& sys, const Eigen::MatrixXd& approx,
                                                            const RationalizeOptions& opt = {}) {
  const auto gg = detail::gram_groups(sys.monomials, sys.target);
  const auto rp = detail::reduce(gg, sys.monomials.size());
  if (rp.empty_face) return std::nullopt;
  const std::size_t n = sys.monomials.size();
  Eigen::MatrixXd red(static_cast<Eigen::Index>(rp.kept.size()), static_cast<Eigen::Index>(rp.kept.size()));
  for (std::size_t a = 0; a < rp.kept.size(); ++a)
    for (std::size_t b = 0; b < rp.kept.size(); ++b)
      red(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = approx(rp.kept[a], rp.kept[b]);

  auto attempt = [&](const Integer& den, const std::vector<std::vector<Rational>>& null) -> std::optional<SOSCertificate> {
    auto reduced = detail::exact_projection(rp, red, den, null);
    if (!reduced) return std::nullopt;
    QMatrix g = detail::expand(rp, *reduced, n);
    auto ldl = ldl_decompose(g);
    if (!ldl.psd) return std::nullopt;
    if (gram_polynomial(sys.nvars, sys.monomials, g) != sys.target) return std::nullopt;
    return SOSCertificate{sys.i, sys.j, sys.nvars, sys.monomials, std::move(g), std::move(ldl)};
  };

  for (Integer den = opt.first_denominator; den <= opt.last_denominator; den *= opt.escalation)
    if (auto cert = attempt(den, {})) return cert;

  if (rp.kept.empty()) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(red);
  const double top = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const Eigen::Index size = red.rows();
  for (double thresh : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3}) {
    Eigen::Index k = 0;
    while (k < size && es.eigenvalues()[k] < thresh * top) ++k;
    if (k == 0 || k == size) continue;
    for (const char* vden : {"100", "10000", "1000000"}) {
      auto null = detail::rational_span(es.eigenvectors().leftCols(k), Integer(vden));
      if (null.empty()) continue;
      for (Integer den = opt.first_denominator; den <= opt.last_denominator; den *= opt.escalation)
        if (auto cert = attempt(den, null)) return cert;
    }
  }
  return std::nullopt;
}

/// Exact re-check of an SOS certificate against delta.
inline bool verify_sos(const SOSCertificate& cert, const Poly& delta, std::string* reason = nullptr) {
  auto fail = [&](const char* why) {
    if (reason) *reason = why;
    return false;
  };
  const std::size_t n = cert.monomials.size();
  if (cert.gram.rows() != n || cert.gram.cols() != n) return fail("gram size does not match the monomials");
  if (!cert.gram.is_symmetric()) return fail("gram is not symmetric");
  if (gram_polynomial(delta.nvars(), cert.monomials, cert.gram) != delta) return fail("m^T G m differs from delta");
  auto ldl = ldl_decompose(cert.gram);
  if (!ldl.psd) return fail("gram is not positive semidefinite");
  if (ldl_reconstruct(ldl) != cert.gram) return fail("LDL factors do not reproduce gram");
  if (!cert.ldl.pivots.empty()) {
    if (cert.ldl.perm.size() != n || cert.ldl.lower.rows() != n) return fail("stored LDL has the wrong size");
    for (const auto& d : cert.ldl.pivots)
      if (d < 0) return fail("stored LDL has a negative pivot");
    if (ldl_reconstruct(cert.ldl) != cert.gram) return fail("stored LDL does not reproduce gram");
  }
  return true;
}

/// Weighted squares delta = sum_k d_k s_k^2 read off the LDL factors.
inline std::vector<std::pair<Rational, Poly>> sos_terms(const SOSCertificate& cert) {
  std::vector<std::pair<Rational, Poly>> out;
  const auto& f = cert.ldl;
  const std::size_t n = f.perm.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (f.pivots[k] == 0) continue;
    std::vector<Poly::Term> terms;
    for (std::size_t i = k; i < n; ++i)
      if (f.lower(i, k) != 0) terms.push_back({cert.monomials[f.perm[i]], f.lower(i, k)});
    out.emplace_back(f.pivots[k], Poly::from_terms(cert.nvars, std::move(terms)));
  }
  return out;
}

/// Splits each square s = a*x_k + b and returns (sum d a^2, sum d b^2).
inline std::pair<Poly, Poly> split_squares(const std::vector<std::pair<Rational, Poly>>& terms, int nvars, int k) {
  Poly lead(nvars), rest(nvars);
  for (const auto& [d, s] : terms) {
    Poly a = s.partial(k);
    Poly b = s.substitute(k, 0);
    lead = lead + (a * a).scaled(d);
    rest = rest + (b * b).scaled(d);
  }
  return {lead, rest};
}

// ---------------------------------------------------------------------------
// Dual certificates

struct DualOptions {
  detail::BarrierOptions barrier{1e-7, 400};
  RationalizeOptions rounding;
};

/// Searches the trace-orthogonal complement of span{G0, G1, ..., Gk} for a
/// positive definite matrix. That complement consists of the matrices that
/// are constant on each product group, sum_g y_g E_g, with sum_g y_g c_g = 0.
inline std::optional<DualPSDCertificate> dual_psd_certificate(const GramSystem& sys, const DualOptions& opt = {}) {
  const auto gg = detail::gram_groups(sys.monomials, sys.target);
  const std::size_t n = sys.monomials.size();
  const std::size_t m = gg.products.size();
  if (n == 0) return std::nullopt;

  detail::LmiProblem p;
  p.n = static_cast<int>(n);
  p.f0 = Eigen::MatrixXd::Zero(p.n, p.n);
  p.eq = Eigen::MatrixXd::Zero(2, static_cast<Eigen::Index>(m));
  p.rhs = Eigen::Vector2d(0.0, 1.0);
  for (std::size_t g = 0; g < m; ++g) {
    detail::SparseSym f;
    for (auto [a, b] : gg.entries[g]) {
      f.push_back({a, b, 1.0});
      if (a != b) f.push_back({b, a, 1.0});
      else p.eq(1, static_cast<Eigen::Index>(g)) += 1.0;
    }
    p.f.push_back(std::move(f));
    p.eq(0, static_cast<Eigen::Index>(g)) = to_double(gg.coef[g]);
  }
  Eigen::Matrix2d gram2 = p.eq * p.eq.transpose();
  // c parallel to the trace functional: c.y = 0 forces zero trace.
  if (std::abs(gram2.determinant()) < 1e-12 * std::max(1.0, gram2.trace() * gram2.trace())) return std::nullopt;
  Eigen::VectorXd y0 = p.eq.transpose() * gram2.inverse() * p.rhs;
  auto res = detail::maximize_min_eigenvalue(p, y0, opt.barrier);
  if (res.t <= 0) return std::nullopt;

  // Round, then restore c.y = 0 exactly along c.
  Rational cc = 0;
  for (const auto& q : gg.coef) cc += q * q;
  for (Integer den = opt.rounding.first_denominator; den <= opt.rounding.last_denominator;
       den *= opt.rounding.escalation) {
    std::vector<Rational> yq(m);
    Rational dot = 0;
    for (std::size_t g = 0; g < m; ++g) {
      yq[g] = best_rational(res.z[static_cast<Eigen::Index>(g)], den);
      dot += yq[g] * gg.coef[g];
    }
    if (cc != 0)
      for (std::size_t g = 0; g < m; ++g) yq[g] -= dot / cc * gg.coef[g];
    QMatrix a(n, n);
    for (std::size_t g = 0; g < m; ++g) {
      if (yq[g] == 0) continue;
      for (auto [r, c] : gg.entries[g]) {
        a(r, c) = yq[g];
        a(c, r) = yq[g];
      }
    }
    auto ldl = ldl_decompose(a);
    if (!ldl.positive_definite) continue;
    return DualPSDCertificate{sys.i, sys.j, std::move(a), std::move(ldl)};
  }
  return std::nullopt;
}

/// Exact check: A positive definite and tr(A G) = 0 for G0 and the kernel.
inline bool verify_dual(const DualPSDCertificate& cert, const GramSystem& sys, std::string* reason = nullptr) {
  auto fail = [&](const char* why) {
    if (reason) *reason = why;
    return false;
  };
  const std::size_t n = sys.monomials.size();
  if (cert.a.rows() != n || cert.a.cols() != n) return fail("matrix size does not match the system");
  if (!cert.a.is_symmetric()) return fail("matrix is not symmetric");
  auto ldl = ldl_decompose(cert.a);
  if (!ldl.positive_definite) return fail("matrix is not positive definite");
  if (ldl_reconstruct(ldl) != cert.a) return fail("LDL factors do not reproduce the matrix");
  if (trace_product(cert.a, sys.g0) != 0) return fail("tr(A G0) is nonzero");
  for (const auto& k : sys.kernel)
    if (trace_product(cert.a, k) != 0) return fail("tr(A Gi) is nonzero for a kernel element");
  return true;
}

// ---------------------------------------------------------------------------
// Per-pair driver

enum class SosOutcome { Certified, NumericOnly, NotSos, Inconclusive };

inline const char* sos_outcome_name(SosOutcome o) {
  switch (o) {
    case SosOutcome::Certified: return "certified";
    case SosOutcome::NumericOnly: return "numeric_only";
    case SosOutcome::NotSos: return "not_sos";
    case SosOutcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct PairSosResult {
  int i = 0;
  int j = 0;
  SosOutcome outcome = SosOutcome::Inconclusive;
  double lambda_min = 0.0;
  std::optional<SOSCertificate> sos;
  std::optional<DualPSDCertificate> dual;
};

struct SosConfig {
  SdpOptions sdp;
  RationalizeOptions rounding;
  DualOptions dual;
  bool try_dual = true;
};

/// SOS certificate, dual certificate, or neither, for Delta_ij(h).
inline PairSosResult certify_pair(const Poly& h, int i, int j, const SosConfig& cfg = {}) {
  PairSosResult out;
  out.i = i;
  out.j = j;
  const Poly delta = rayleigh_difference(h, i, j);
  GramSystem sys = gram_system(delta, i, j, monomial_basis(h.nvars(), i, j, h.degree() - 1));
  auto num = sdp_feasible(sys, cfg.sdp);
  out.lambda_min = num.lambda_min;
  if (num.feasible) {
    if (auto cert = rationalize_and_verify(sys, num.gram, cfg.rounding)) {
      out.sos = std::move(cert);
      out.outcome = SosOutcome::Certified;
      return out;
    }
    out.outcome = SosOutcome::NumericOnly;
    return out;
  }
  if (cfg.try_dual) {
    auto dual = dual_psd_certificate(sys, cfg.dual);
    if (dual && verify_dual(*dual, sys)) {
      out.dual = std::move(dual);
      out.outcome = SosOutcome::NotSos;
    }
  }
  return out;
}

}  // namespace hpp
