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

// Random instances and brute-force oracles shared by the tests.

#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hpp/hpp.hpp"

namespace hpp::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Column matroid of a random small integer matrix (repeated and zero
/// columns allowed, so loops and parallel pairs show up).
inline Matroid random_matrix_matroid(Rng& rng, int n, int rows) {
  for (;;) {
    QMatrix a(rows, n);
    for (int c = 0; c < n; ++c) {
      const int mode = uniform_int(rng, 0, 9);
      for (int r = 0; r < rows; ++r) {
        if (mode == 0) a(r, c) = 0;
        else if (mode == 1 && c > 0) a(r, c) = a(r, c - 1) * 2;
        else a(r, c) = uniform_int(rng, -2, 2);
      }
    }
    if (rank(a) > 0) return Matroid::from_matrix(a);
  }
}

/// Sparse paving matroid from randomly chosen r-sets meeting pairwise in at
/// most r-2 elements.
inline Matroid random_sparse_paving(Rng& rng, int n, int r) {
  auto all = k_subsets(n, r);
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<Mask> nb;
  const int want = uniform_int(rng, 0, 6);
  for (Mask s : all) {
    if (static_cast<int>(nb.size()) >= want) break;
    bool ok = true;
    for (Mask t : nb)
      if (popcount(s & t) > r - 2) ok = false;
    if (ok) nb.push_back(s);
  }
  return Matroid::from_nonbases(n, r, nb);
}

inline Matroid random_matroid(Rng& rng, int max_n = 7) {
  const int n = uniform_int(rng, 3, max_n);
  if (uniform_int(rng, 0, 1) == 0) return random_matrix_matroid(rng, n, uniform_int(rng, 1, std::min(4, n)));
  return random_sparse_paving(rng, n, uniform_int(rng, 2, std::min(4, n - 1)));
}

inline Mask random_subset(Rng& rng, int n) {
  return static_cast<Mask>(std::uniform_int_distribution<std::uint32_t>(0, full_mask(n))(rng));
}

/// Random subset that leaves at least one element on each side.
inline Mask random_proper_subset(Rng& rng, int n) {
  for (;;) {
    const Mask s = random_subset(rng, n);
    if (s != 0 && s != full_mask(n)) return s;
  }
}

/// Exchange axiom checked on element vectors rather than masks.
inline bool exchange_oracle(const std::set<std::vector<int>>& family) {
  for (const auto& b1 : family)
    for (const auto& b2 : family)
      for (int x : b1) {
        if (std::find(b2.begin(), b2.end(), x) != b2.end()) continue;
        bool found = false;
        for (int y : b2) {
          if (std::find(b1.begin(), b1.end(), y) != b1.end()) continue;
          std::vector<int> swapped;
          for (int e : b1)
            if (e != x) swapped.push_back(e);
          swapped.push_back(y);
          std::sort(swapped.begin(), swapped.end());
          if (family.count(swapped)) {
            found = true;
            break;
          }
        }
        if (!found) return false;
      }
  return true;
}

inline bool exchange_oracle(const Matroid& m) {
  std::set<std::vector<int>> family;
  for (Mask b : m.bases()) family.insert(elements_of(b));
  return exchange_oracle(family);
}

/// rk(S) = max |B ∩ S| over bases.
inline int rank_oracle(const Matroid& m, Mask s) {
  int best = 0;
  for (Mask b : m.bases()) best = std::max(best, popcount(b & s));
  return best;
}

/// Dual bases as complements, without calling dual().
inline std::vector<Mask> complement_bases(const Matroid& m) {
  std::vector<Mask> out;
  for (Mask b : m.bases()) out.push_back(m.ground() & ~b);
  std::sort(out.begin(), out.end());
  return out;
}

/// h_M as an explicit sum over the basis family, built term by term.
inline Poly basis_poly_oracle(const Matroid& m) {
  Poly h(m.size());
  for (Mask b : m.bases()) {
    Poly term = Poly::constant(m.size(), 1);
    for (int e : elements_of(b)) term = term * Poly::variable(m.size(), e);
    h = h + term;
  }
  return h;
}

inline Poly var(int n, int i) { return Poly::variable(n, i); }
inline Poly cst(int n, long c) { return Poly::constant(n, c); }

}  // namespace hpp::testing
