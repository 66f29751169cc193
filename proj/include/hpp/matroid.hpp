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

// Finite matroids on at most 16 elements, stored by their basis family.
//
// Elements are labeled 1..n in every public interface; internally element e
// is bit e-1 of a Mask.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/linalg.hpp"
#include "hpp/rational.hpp"

namespace hpp {

using Mask = std::uint32_t;

inline constexpr int kMaxElements = 16;

inline int popcount(Mask m) { return std::popcount(m); }

inline Mask element_bit(int e) { return Mask{1} << (e - 1); }

inline Mask full_mask(int n) { return n == 0 ? 0 : (Mask{0xFFFFFFFFu} >> (32 - n)); }

/// Builds a mask from 1-based element labels.
inline Mask mask_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) m |= element_bit(e);
  return m;
}

inline Mask mask_of(const std::vector<int>& elements) {
  Mask m = 0;
  for (int e : elements) m |= element_bit(e);
  return m;
}

inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  for (int e = 1; m != 0; ++e, m >>= 1)
    if (m & 1u) out.push_back(e);
  return out;
}

inline std::string format_set(Mask m) {
  std::string s = "{";
  bool first = true;
  for (int e : elements_of(m)) {
    if (!first) s += ",";
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

/// All k-subsets of an n-element ground set, in increasing mask order.
inline std::vector<Mask> k_subsets(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  if (k == 0) return {0};
  Mask m = full_mask(k);
  const Mask limit = Mask{1} << n;
  while (m < limit) {
    out.push_back(m);
    Mask c = m & (~m + 1);  // Gosper's hack
    Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

/// Removes the bits in `removed` and shifts the remaining bits down.
inline Mask compress_mask(Mask m, Mask removed) {
  Mask out = 0;
  int pos = 0;
  for (int b = 0; b < kMaxElements; ++b) {
    if (removed & (Mask{1} << b)) continue;
    if (m & (Mask{1} << b)) out |= Mask{1} << pos;
    ++pos;
  }
  return out;
}

/// Applies a relabeling: bit e-1 moves to bit perm[e-1]-1 (perm is 1-based).
inline Mask permute_mask(Mask m, const std::vector<int>& perm) {
  Mask out = 0;
  for (std::size_t b = 0; b < perm.size(); ++b)
    if (m & (Mask{1} << b)) out |= element_bit(perm[b]);
  return out;
}

class Matroid;

/// Witness that N is a minor of M: N = relabel(M / contracted \ deleted).
struct MinorWitness {
  Mask deleted = 0;
  Mask contracted = 0;
  // relabeling[k-1] = element of M that plays the role of element k of N.
  std::vector<int> relabeling;
};

class Matroid {
 public:
  /// Validates and builds a matroid from a basis family given as masks.
  static Matroid from_bases(int n, int r, std::vector<Mask> bases) {
    if (n < 0 || n > kMaxElements)
      throw Error(Errc::SizeMismatch, "ground set size " + std::to_string(n) + " outside 0..16");
    if (r < 0 || r > n) throw Error(Errc::SizeMismatch, "rank " + std::to_string(r) + " outside 0..n");
    if (bases.empty()) throw Error(Errc::EmptyBases, "basis family is empty");
    const Mask ground = full_mask(n);
    for (Mask b : bases) {
      if ((b & ~ground) != 0)
        throw Error(Errc::SizeMismatch, "subset " + format_set(b) + " not inside ground set");
      if (popcount(b) != r)
        throw Error(Errc::SizeMismatch,
                    "subset " + format_set(b) + " has size " + std::to_string(popcount(b)) + ", expected " +
                        std::to_string(r));
    }
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    Matroid m(n, r, std::move(bases));
    m.check_exchange();
    return m;
  }

  static Matroid from_bases(int n, int r, const std::vector<std::vector<int>>& bases) {
    std::vector<Mask> masks;
    masks.reserve(bases.size());
    for (const auto& b : bases) {
      for (int e : b)
        if (e < 1 || e > n) throw Error(Errc::SizeMismatch, "element " + std::to_string(e) + " outside 1..n");
      masks.push_back(mask_of(b));
    }
    return from_bases(n, r, std::move(masks));
  }

  /// Bases = all r-subsets except the listed non-bases.
  static Matroid from_nonbases(int n, int r, const std::vector<Mask>& nonbases) {
    std::vector<Mask> sorted = nonbases;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Mask> bases;
    for (Mask s : k_subsets(n, r))
      if (!std::binary_search(sorted.begin(), sorted.end(), s)) bases.push_back(s);
    for (Mask s : sorted)
      if (popcount(s) != r || (s & ~full_mask(n)) != 0)
        throw Error(Errc::SizeMismatch, "non-basis " + format_set(s) + " is not an r-subset of the ground set");
    return from_bases(n, r, std::move(bases));
  }

  /// Column matroid of a rational matrix.
  static Matroid from_matrix(const QMatrix& columns) {
    const int n = static_cast<int>(columns.cols());
    const int r = static_cast<int>(hpp::rank(columns));
    if (r == 0) throw Error(Errc::ZeroMatrix, "matrix has rank zero");
    std::vector<Mask> bases;
    for (Mask s : k_subsets(n, r)) {
      std::vector<std::size_t> idx;
      for (int e : elements_of(s)) idx.push_back(static_cast<std::size_t>(e - 1));
      if (hpp::rank(columns.columns(idx)) == static_cast<std::size_t>(r)) bases.push_back(s);
    }
    return from_bases(n, r, std::move(bases));
  }

  /// Column matroid of an integer matrix read over GF(p).
  static Matroid from_matrix_mod_p(const Matrix<long>& columns, long p) {
    const int n = static_cast<int>(columns.cols());
    const int r = static_cast<int>(rank_mod_p(columns, p));
    if (r == 0) throw Error(Errc::ZeroMatrix, "matrix has rank zero over GF(" + std::to_string(p) + ")");
    std::vector<Mask> bases;
    for (Mask s : k_subsets(n, r)) {
      std::vector<std::size_t> idx;
      for (int e : elements_of(s)) idx.push_back(static_cast<std::size_t>(e - 1));
      if (rank_mod_p(columns.columns(idx), p) == static_cast<std::size_t>(r)) bases.push_back(s);
    }
    return from_bases(n, r, std::move(bases));
  }

  static Matroid uniform(int r, int n) { return from_bases(n, r, k_subsets(n, r)); }

  int size() const { return n_; }
  int rank() const { return r_; }
  const std::vector<Mask>& bases() const { return bases_; }
  Mask ground() const { return full_mask(n_); }

  bool is_basis(Mask s) const { return std::binary_search(bases_.begin(), bases_.end(), s); }

  std::vector<Mask> nonbases() const {
    std::vector<Mask> out;
    for (Mask s : k_subsets(n_, r_))
      if (!is_basis(s)) out.push_back(s);
    return out;
  }

  int rank(Mask s) const {
    int best = 0;
    for (Mask b : bases_) {
      best = std::max(best, popcount(b & s));
      if (best == popcount(s)) break;
    }
    return best;
  }

  bool is_independent(Mask s) const { return rank(s) == popcount(s); }

  Mask closure(Mask s) const {
    const int rs = rank(s);
    Mask out = s;
    for (int e = 1; e <= n_; ++e)
      if (!(s & element_bit(e)) && rank(s | element_bit(e)) == rs) out |= element_bit(e);
    return out;
  }

  bool operator==(const Matroid& o) const { return n_ == o.n_ && r_ == o.r_ && bases_ == o.bases_; }

  std::string describe() const {
    std::ostringstream os;
    os << "Matroid(n=" << n_ << ", r=" << r_ << ", |bases|=" << bases_.size() << ")";
    return os.str();
  }

 private:
  Matroid(int n, int r, std::vector<Mask> bases) : n_(n), r_(r), bases_(std::move(bases)) {}

  void check_exchange() const {
    const std::size_t table_size = std::size_t{1} << n_;
    std::vector<bool> member(table_size, false);
    for (Mask b : bases_) member[b] = true;
    for (Mask b1 : bases_) {
      for (Mask b2 : bases_) {
        Mask only1 = b1 & ~b2;
        Mask only2 = b2 & ~b1;
        for (Mask xs = only1; xs != 0; xs &= xs - 1) {
          Mask x = xs & (~xs + 1);
          bool found = false;
          for (Mask ys = only2; ys != 0 && !found; ys &= ys - 1) {
            Mask y = ys & (~ys + 1);
            if (member[(b1 & ~x) | y]) found = true;
          }
          if (!found) {
            throw Error(Errc::ExchangeAxiomViolation,
                        "B1=" + format_set(b1) + " B2=" + format_set(b2) + " x=" +
                            std::to_string(std::countr_zero(x) + 1));
          }
        }
      }
    }
  }

  int n_ = 0;
  int r_ = 0;
  std::vector<Mask> bases_;
};

/// Table of rk(S) for all 2^n subsets; worthwhile when many rank queries follow.
class RankOracle {
 public:
  explicit RankOracle(const Matroid& m) : n_(m.size()), rank_(std::size_t{1} << m.size(), 0) {
    std::vector<bool> indep(rank_.size(), false);
    for (Mask b : m.bases()) indep[b] = true;
    // Independent sets are exactly the subsets of bases; sweep from large to small.
    for (std::size_t s = rank_.size(); s-- > 0;) {
      if (indep[s]) {
        for (Mask bits = static_cast<Mask>(s); bits != 0; bits &= bits - 1) {
          Mask low = bits & (~bits + 1);
          indep[s & ~low] = true;
        }
      }
    }
    for (std::size_t s = 0; s < rank_.size(); ++s) {
      if (indep[s]) {
        rank_[s] = static_cast<std::uint8_t>(popcount(static_cast<Mask>(s)));
        continue;
      }
      std::uint8_t best = 0;
      for (Mask bits = static_cast<Mask>(s); bits != 0; bits &= bits - 1) {
        Mask low = bits & (~bits + 1);
        best = std::max(best, rank_[s & ~low]);
      }
      rank_[s] = best;
    }
  }

  int operator()(Mask s) const { return rank_[s]; }
  int size() const { return n_; }

 private:
  int n_;
  std::vector<std::uint8_t> rank_;
};

// ---------------------------------------------------------------------------
// Duality, minors, sums

inline Matroid dual(const Matroid& m) {
  const Mask ground = m.ground();
  std::vector<Mask> bases;
  bases.reserve(m.bases().size());
  for (Mask b : m.bases()) bases.push_back(ground & ~b);
  return Matroid::from_bases(m.size(), m.size() - m.rank(), std::move(bases));
}

/// M \ S, relabeled to 1..n-|S|.
inline Matroid delete_elements(const Matroid& m, Mask s) {
  s &= m.ground();
  if (popcount(s) == m.size()) throw Error(Errc::EmptyGroundSet, "deletion removes every element");
  int best = m.size();
  for (Mask b : m.bases()) best = std::min(best, popcount(b & s));
  std::vector<Mask> bases;
  for (Mask b : m.bases())
    if (popcount(b & s) == best) bases.push_back(compress_mask(b & ~s, s));
  return Matroid::from_bases(m.size() - popcount(s), m.rank() - best, std::move(bases));
}

/// M / S, relabeled to 1..n-|S|.
inline Matroid contract_elements(const Matroid& m, Mask s) {
  s &= m.ground();
  if (popcount(s) == m.size()) throw Error(Errc::EmptyGroundSet, "contraction removes every element");
  const int rs = m.rank(s);
  std::vector<Mask> bases;
  for (Mask b : m.bases())
    if (popcount(b & s) == rs) bases.push_back(compress_mask(b & ~s, s));
  return Matroid::from_bases(m.size() - popcount(s), m.rank() - rs, std::move(bases));
}

/// M restricted to S (= M \ (E - S)), relabeled.
inline Matroid restrict_to(const Matroid& m, Mask s) { return delete_elements(m, m.ground() & ~s); }

/// M1 ⊕ M2; elements of M2 are shifted by |E(M1)|.
inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
  if (a.size() + b.size() > kMaxElements) throw Error(Errc::SizeMismatch, "direct sum exceeds 16 elements");
  std::vector<Mask> bases;
  bases.reserve(a.bases().size() * b.bases().size());
  for (Mask x : a.bases())
    for (Mask y : b.bases()) bases.push_back(x | (y << a.size()));
  return Matroid::from_bases(a.size() + b.size(), a.rank() + b.rank(), std::move(bases));
}

/// Relabels elements: element e of m becomes perm[e-1].
inline Matroid relabel(const Matroid& m, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != m.size()) throw Error(Errc::SizeMismatch, "permutation length");
  std::vector<Mask> bases;
  for (Mask b : m.bases()) bases.push_back(permute_mask(b, perm));
  return Matroid::from_bases(m.size(), m.rank(), std::move(bases));
}

// ---------------------------------------------------------------------------
// Structural predicates

inline Mask loops(const Matroid& m) {
  Mask used = 0;
  for (Mask b : m.bases()) used |= b;
  return m.ground() & ~used;
}

inline Mask coloops(const Matroid& m) {
  Mask common = m.ground();
  for (Mask b : m.bases()) common &= b;
  return common;
}

/// Pairs {i,j} of non-loops with rk({i,j}) = 1.
inline std::vector<std::pair<int, int>> parallel_pairs(const Matroid& m) {
  std::vector<std::pair<int, int>> out;
  const Mask lp = loops(m);
  for (int i = 1; i <= m.size(); ++i)
    for (int j = i + 1; j <= m.size(); ++j) {
      if ((lp & element_bit(i)) || (lp & element_bit(j))) continue;
      if (m.rank(element_bit(i) | element_bit(j)) == 1) out.emplace_back(i, j);
    }
  return out;
}

inline bool is_simple(const Matroid& m) { return loops(m) == 0 && parallel_pairs(m).empty(); }

/// Connected components (separators of the finest direct-sum decomposition).
inline std::vector<Mask> components(const Matroid& m) {
  const RankOracle rk(m);
  const Mask ground = m.ground();
  const int r = m.rank();
  std::vector<Mask> comps;
  Mask covered = 0;
  for (int e = 1; e <= m.size(); ++e) {
    if (covered & element_bit(e)) continue;
    Mask comp = ground;
    // Separators containing e, intersected.
    for (Mask s = ground; ; s = (s - 1) & ground) {
      if ((s & element_bit(e)) && rk(s) + rk(ground & ~s) == r) comp &= s;
      if (s == 0) break;
    }
    comps.push_back(comp);
    covered |= comp;
  }
  return comps;
}

/// Connected iff no proper nonempty split S has rk(S) + rk(E-S) = r.
inline bool is_connected(const Matroid& m) {
  if (m.size() <= 1) return true;
  const RankOracle rk(m);
  const Mask ground = m.ground();
  const int r = m.rank();
  // Splits containing element 1 cover every bipartition once.
  const Mask rest = ground & ~Mask{1};
  for (Mask t = rest; ; t = (t - 1) & rest) {
    Mask s = t | Mask{1};
    if (s != ground && rk(s) + rk(ground & ~s) == r) return false;
    if (t == 0) break;
  }
  return true;
}

inline bool is_circuit_hyperplane(const Matroid& m, Mask h) {
  const int r = m.rank();
  if (popcount(h) != r || (h & ~m.ground()) || m.is_basis(h)) return false;
  if (m.rank(h) != r - 1) return false;
  for (Mask bits = h; bits != 0; bits &= bits - 1) {
    Mask low = bits & (~bits + 1);
    if (!m.is_independent(h & ~low)) return false;
  }
  return m.closure(h) == h;
}

inline std::vector<Mask> circuit_hyperplanes(const Matroid& m) {
  std::vector<Mask> out;
  for (Mask s : m.nonbases())
    if (is_circuit_hyperplane(m, s)) out.push_back(s);
  return out;
}

/// Declares the circuit hyperplane H a basis.
inline Matroid relax(const Matroid& m, Mask h) {
  if (!is_circuit_hyperplane(m, h))
    throw Error(Errc::NotACircuitHyperplane, format_set(h) + " is not a circuit hyperplane");
  std::vector<Mask> bases = m.bases();
  bases.push_back(h);
  return Matroid::from_bases(m.size(), m.rank(), std::move(bases));
}

/// Free extension by a new element n+1.
inline Matroid free_extension(const Matroid& m) {
  if (m.size() + 1 > kMaxElements) throw Error(Errc::SizeMismatch, "free extension exceeds 16 elements");
  std::vector<Mask> bases = m.bases();
  const Mask fresh = element_bit(m.size() + 1);
  if (m.rank() > 0) {
    std::vector<Mask> smaller;
    for (Mask b : m.bases())
      for (Mask bits = b; bits != 0; bits &= bits - 1) smaller.push_back(b & ~(bits & (~bits + 1)));
    std::sort(smaller.begin(), smaller.end());
    smaller.erase(std::unique(smaller.begin(), smaller.end()), smaller.end());
    for (Mask i : smaller) bases.push_back(i | fresh);
  }
  return Matroid::from_bases(m.size() + 1, m.rank(), std::move(bases));
}

/// Free coextension: dual of the free extension of the dual.
inline Matroid free_coextension(const Matroid& m) { return dual(free_extension(dual(m))); }

/// Bases of M|S ⊕ M/S on the original labels; S must be a flat.
inline Matroid polytope_face_matroid(const Matroid& m, Mask s) {
  if ((s & ~m.ground()) || m.closure(s) != s) throw Error(Errc::NotAFlat, format_set(s) + " is not a flat");
  const int rs = m.rank(s);
  std::vector<Mask> bases;
  for (Mask b : m.bases())
    if (popcount(b & s) == rs) bases.push_back(b);
  return Matroid::from_bases(m.size(), m.rank(), std::move(bases));
}

/// All flats, in increasing mask order.
inline std::vector<Mask> flats(const Matroid& m) {
  const RankOracle rk(m);
  std::vector<Mask> out;
  const Mask ground = m.ground();
  for (Mask s = 0; s <= ground; ++s) {
    bool closed = true;
    for (int e = 1; e <= m.size() && closed; ++e)
      if (!(s & element_bit(e)) && rk(s | element_bit(e)) == rk(s)) closed = false;
    if (closed) out.push_back(s);
    if (s == ground) break;
  }
  return out;
}

/// Sparse paving iff distinct non-bases meet in at most r-2 elements.
inline bool is_sparse_paving(const Matroid& m) {
  const auto nb = m.nonbases();
  for (std::size_t a = 0; a < nb.size(); ++a)
    for (std::size_t b = a + 1; b < nb.size(); ++b)
      if (popcount(nb[a] & nb[b]) > m.rank() - 2) return false;
  return true;
}

struct VamosWitness {
  std::array<Mask, 4> pairs{};
  Mask k = 0;
};

/// Searches for disjoint 2-sets P1..P4 and an (r-4)-set K with K∪Pi∪Pj non-bases
/// for all i<j except (3,4), and K∪P3∪P4 a basis.
inline std::optional<VamosWitness> is_vamos_like(const Matroid& m) {
  const int r = m.rank();
  if (r < 4 || m.size() < r + 4 || !is_sparse_paving(m)) return std::nullopt;
  const auto pairs = k_subsets(m.size(), 2);
  auto nonbasis = [&](Mask s) { return !m.is_basis(s); };
  for (Mask k : k_subsets(m.size(), r - 4)) {
    for (Mask p1 : pairs) {
      if (p1 & k) continue;
      for (Mask p2 : pairs) {
        if ((p2 & (k | p1)) || p2 < p1) continue;
        if (!nonbasis(k | p1 | p2)) continue;
        for (Mask p3 : pairs) {
          if (p3 & (k | p1 | p2)) continue;
          if (!nonbasis(k | p1 | p3) || !nonbasis(k | p2 | p3)) continue;
          for (Mask p4 : pairs) {
            if ((p4 & (k | p1 | p2 | p3)) || p4 < p3) continue;
            if (!nonbasis(k | p1 | p4) || !nonbasis(k | p2 | p4)) continue;
            if (!m.is_basis(k | p3 | p4)) continue;
            return VamosWitness{{p1, p2, p3, p4}, k};
          }
        }
      }
    }
  }
  return std::nullopt;
}

struct IngletonResult {
  int lhs = 0;
  int rhs = 0;
  bool holds = true;
};

template <typename RankFn>
IngletonResult ingleton_check(const RankFn& rk, Mask p1, Mask p2, Mask p3, Mask p4) {
  IngletonResult out;
  out.lhs = rk(p1 | p2) + rk(p1 | p3) + rk(p1 | p4) + rk(p2 | p3) + rk(p2 | p4);
  out.rhs = rk(p1) + rk(p2) + rk(p1 | p2 | p3) + rk(p1 | p2 | p4) + rk(p3 | p4);
  out.holds = out.lhs >= out.rhs;
  return out;
}

inline IngletonResult ingleton_check(const Matroid& m, Mask p1, Mask p2, Mask p3, Mask p4) {
  return ingleton_check([&m](Mask s) { return m.rank(s); }, p1, p2, p3, p4);
}

struct IngletonViolation {
  std::array<Mask, 4> sets{};
  IngletonResult value;
};

/// Searches pairwise disjoint nonempty P1..P4 of size <= max_size for an
/// Ingleton violation. The inequality is symmetric under P1<->P2 and P3<->P4,
/// so only P1 < P2 and P3 < P4 (as masks) are tried.
inline std::optional<IngletonViolation> ingleton_search(const Matroid& m, int max_size = 2) {
  const RankOracle rk(m);
  std::vector<Mask> candidates;
  for (int k = 1; k <= max_size; ++k)
    for (Mask s : k_subsets(m.size(), k)) candidates.push_back(s);
  for (Mask p1 : candidates)
    for (Mask p2 : candidates) {
      if ((p1 & p2) || p2 <= p1) continue;
      const Mask used12 = p1 | p2;
      for (Mask p3 : candidates) {
        if (p3 & used12) continue;
        for (Mask p4 : candidates) {
          if ((p4 & (used12 | p3)) || p4 <= p3) continue;
          auto res = ingleton_check(rk, p1, p2, p3, p4);
          if (!res.holds) return IngletonViolation{{p1, p2, p3, p4}, res};
        }
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

/// Per-element invariant: sorted list of how many members of `family` contain
/// the element together with each other element, prefixed by its degree.
inline std::vector<std::vector<int>> element_signatures(int n, const std::vector<Mask>& family) {
  std::vector<std::vector<int>> sig(n);
  std::vector<std::vector<int>> pair(n, std::vector<int>(n, 0));
  std::vector<int> degree(n, 0);
  for (Mask f : family)
    for (int a = 0; a < n; ++a) {
      if (!(f & (Mask{1} << a))) continue;
      ++degree[a];
      for (int b = 0; b < n; ++b)
        if (b != a && (f & (Mask{1} << b))) ++pair[a][b];
    }
  for (int a = 0; a < n; ++a) {
    std::vector<int> row;
    for (int b = 0; b < n; ++b)
      if (b != a) row.push_back(pair[a][b]);
    std::sort(row.begin(), row.end());
    sig[a].push_back(degree[a]);
    sig[a].insert(sig[a].end(), row.begin(), row.end());
  }
  return sig;
}

/// The smaller of bases / non-bases; both determine the matroid given (n, r).
inline std::vector<Mask> distinguishing_family(const Matroid& m, bool use_bases) {
  return use_bases ? m.bases() : m.nonbases();
}

}  // namespace detail

/// Returns perm (1-based) with relabel(a, perm) == b, if a ≅ b.
inline std::optional<std::vector<int>> find_isomorphism(const Matroid& a, const Matroid& b) {
  if (a.size() != b.size() || a.rank() != b.rank() || a.bases().size() != b.bases().size()) return std::nullopt;
  const int n = a.size();
  const std::size_t total = k_subsets(n, a.rank()).size();
  const bool use_bases = a.bases().size() * 2 <= total;
  const auto fam_a = detail::distinguishing_family(a, use_bases);
  const auto fam_b = detail::distinguishing_family(b, use_bases);
  const auto sig_a = detail::element_signatures(n, fam_a);
  const auto sig_b = detail::element_signatures(n, fam_b);
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<bool> member_b(std::size_t{1} << n, false);
  for (Mask f : fam_b) member_b[f] = true;
  // Members of fam_a grouped by their highest element, so each is checked once
  // as soon as all of its elements are mapped.
  std::vector<std::vector<Mask>> by_top(n);
  for (Mask f : fam_a)
    if (f != 0) by_top[31 - std::countl_zero(f)].push_back(f);
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  auto map_mask = [&](Mask f) {
    Mask out = 0;
    for (Mask bits = f; bits != 0; bits &= bits - 1) out |= Mask{1} << image[std::countr_zero(bits)];
    return out;
  };
  auto search = [&](auto&& self, int pos) -> bool {
    if (pos == n) return true;
    for (int t = 0; t < n; ++t) {
      if (used[t] || sig_a[pos] != sig_b[t]) continue;
      image[pos] = t;
      used[t] = true;
      bool ok = true;
      for (Mask f : by_top[pos])
        if (!member_b[map_mask(f)]) {
          ok = false;
          break;
        }
      if (ok && self(self, pos + 1)) return true;
      used[t] = false;
      image[pos] = -1;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  std::vector<int> perm(n);
  for (int e = 0; e < n; ++e) perm[e] = image[e] + 1;
  return perm;
}

inline bool is_isomorphic(const Matroid& a, const Matroid& b) { return find_isomorphism(a, b).has_value(); }

/// Canonical representative of the isomorphism class.
///
/// Elements are first ordered by a relabeling-invariant signature; the result
/// is the relabeling, among those respecting the signature order, whose sorted
/// basis-mask list is lexicographically smallest.
inline Matroid canonical_form(const Matroid& m) {
  const int n = m.size();
  if (n == 0) return m;
  const std::size_t total = k_subsets(n, m.rank()).size();
  const bool use_bases = m.bases().size() * 2 <= total;
  const auto family = detail::distinguishing_family(m, use_bases);
  const auto sig = detail::element_signatures(n, family);
  // Target positions: elements sorted by signature; ties form blocks.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return sig[x] < sig[y]; });
  std::vector<std::pair<int, int>> blocks;  // [begin, end) in `order`
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && sig[order[j]] == sig[order[i]]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  if (family.empty()) return m;  // uniform: every relabeling is equal
  std::vector<Mask> best;
  std::vector<int> perm(n);
  std::vector<int> slots = order;  // permuted within blocks
  auto evaluate = [&]() {
    for (int pos = 0; pos < n; ++pos) perm[slots[pos]] = pos + 1;
    std::vector<Mask> img;
    img.reserve(m.bases().size());
    for (Mask b : m.bases()) img.push_back(permute_mask(b, perm));
    std::sort(img.begin(), img.end());
    if (best.empty() || img < best) best = std::move(img);
  };
  auto recurse = [&](auto&& self, std::size_t block) -> void {
    if (block == blocks.size()) {
      evaluate();
      return;
    }
    auto [lo, hi] = blocks[block];
    std::sort(slots.begin() + lo, slots.begin() + hi);
    do {
      self(self, block + 1);
    } while (std::next_permutation(slots.begin() + lo, slots.begin() + hi));
  };
  recurse(recurse, 0);
  return Matroid::from_bases(n, m.rank(), std::move(best));
}

/// Searches for a minor of m isomorphic to target.
///
/// Contraction sets range over independent sets of size r(M)-r(N); deletion
/// sets over sets that keep the rank of M/C, i.e. coindependent in M/C.
inline std::optional<MinorWitness> has_minor(const Matroid& m, const Matroid& target) {
  const int dc = m.rank() - target.rank();
  const int dd = (m.size() - target.size()) - dc;
  if (dc < 0 || dd < 0) return std::nullopt;
  const Mask ground = m.ground();
  for (Mask c : k_subsets(m.size(), dc)) {
    if (!m.is_independent(c)) continue;
    const Matroid mc = dc == 0 ? m : contract_elements(m, c);
    // Elements of mc are the elements of m outside c, in increasing order.
    const std::vector<int> remaining = elements_of(ground & ~c);
    for (Mask d_local : k_subsets(mc.size(), dd)) {
      // D must be coindependent in M/C: the deletion keeps rank.
      if (mc.rank(mc.ground() & ~d_local) != mc.rank()) continue;
      const Matroid minor = dd == 0 ? mc : delete_elements(mc, d_local);
      if (minor.bases().size() != target.bases().size()) continue;
      auto iso = find_isomorphism(target, minor);
      if (!iso) continue;
      MinorWitness w;
      w.contracted = c;
      for (int e : elements_of(d_local)) w.deleted |= element_bit(remaining[e - 1]);
      const std::vector<int> kept = elements_of(ground & ~(c | w.deleted));
      w.relabeling.resize(target.size());
      for (int k = 0; k < target.size(); ++k) w.relabeling[k] = kept[(*iso)[k] - 1];
      return w;
    }
  }
  return std::nullopt;
}

/// Applies a witness and checks that it yields a matroid isomorphic to target
/// under the recorded relabeling.
inline bool verify_minor_witness(const Matroid& m, const Matroid& target, const MinorWitness& w) {
  if (w.deleted & w.contracted) return false;
  if (static_cast<int>(w.relabeling.size()) != target.size()) return false;
  const Mask removed = w.deleted | w.contracted;
  if (m.size() - popcount(removed) != target.size()) return false;
  Matroid minor = w.contracted ? contract_elements(m, w.contracted) : m;
  if (w.deleted) minor = delete_elements(minor, compress_mask(w.deleted, w.contracted));
  const std::vector<int> kept = elements_of(m.ground() & ~removed);
  // target element k maps to kept position of relabeling[k-1].
  std::vector<int> perm(target.size());
  for (int k = 0; k < target.size(); ++k) {
    auto it = std::find(kept.begin(), kept.end(), w.relabeling[k]);
    if (it == kept.end()) return false;
    perm[k] = static_cast<int>(it - kept.begin()) + 1;
  }
  std::vector<int> seen = perm;
  std::sort(seen.begin(), seen.end());
  for (int k = 0; k < target.size(); ++k)
    if (seen[k] != k + 1) return false;
  return relabel(target, perm) == minor;
}

}  // namespace hpp
