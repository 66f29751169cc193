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

// Dense exact linear algebra over the rationals and over prime fields.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpp/error.hpp"
#include "hpp/rational.hpp"

namespace hpp {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Submatrix with the given column indices.
  Matrix columns(const std::vector<std::size_t>& idx) const {
    Matrix s(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product shapes");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

/// Trace inner product tr(A B) for symmetric A, B.
inline Rational trace_product(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::DimensionMismatch, "trace product shapes");
  Rational s = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  return s;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> nullspace(QMatrix m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b (free variables set to zero), or nothing when
/// the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(const QMatrix& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "right-hand side length");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<Rational> x(a.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

inline Rational determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    Rational inv = 1 / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rational f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Rank of an integer matrix reduced modulo a prime p.
inline std::size_t rank_mod_p(const Matrix<long>& in, long p) {
  Matrix<long> m(in.rows(), in.cols());
  for (std::size_t i = 0; i < in.rows(); ++i)
    for (std::size_t j = 0; j < in.cols(); ++j) m(i, j) = ((in(i, j) % p) + p) % p;
  auto inv_mod = [p](long a) {
    long result = 1, base = a % p, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    long inv = inv_mod(m(row, col));
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv % p;
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      long f = m(i, col);
      if (f == 0) continue;
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = ((m(i, j) - f * m(row, j)) % p + p) % p;
    }
    ++row;
  }
  return row;
}

/// Symmetric-pivoted LDL^T factorization over the rationals.
///
/// P A P^T = L D L^T with L unit lower triangular. A is positive
/// semidefinite iff every pivot is nonnegative and each zero pivot comes
/// with an all-zero remaining row.
struct LdlResult {
  bool psd = false;
  bool positive_definite = false;
  std::vector<std::size_t> perm;  // elimination order, perm[k] = original index
  std::vector<Rational> pivots;   // D in elimination order
  QMatrix lower;                  // L in elimination order
  std::string reason;             // set when !psd
};

inline LdlResult ldl_decompose(const QMatrix& a) {
  LdlResult out;
  if (a.rows() != a.cols() || !a.is_symmetric()) {
    out.reason = "matrix is not square symmetric";
    return out;
  }
  const std::size_t n = a.rows();
  QMatrix work = a;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  out.lower = QMatrix::identity(n);
  out.psd = true;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (work(i, i) > work(best, best)) best = i;
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(work(k, j), work(best, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(work(i, k), work(i, best));
      std::swap(out.perm[k], out.perm[best]);
      for (std::size_t j = 0; j < k; ++j) std::swap(out.lower(k, j), out.lower(best, j));
    }
    const Rational d = work(k, k);
    out.pivots.push_back(d);
    if (d < 0) {
      out.psd = false;
      out.reason = "negative pivot at step " + std::to_string(k);
      return out;
    }
    if (d == 0) {
      for (std::size_t i = k + 1; i < n; ++i)
        if (work(i, k) != 0) {
          out.psd = false;
          out.reason = "zero pivot with nonzero off-diagonal at step " + std::to_string(k);
          return out;
        }
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (work(i, k) == 0) continue;
      Rational l = work(i, k) / d;
      out.lower(i, k) = l;
      for (std::size_t j = k + 1; j <= i; ++j) {
        if (work(k, j) == 0) continue;
        work(i, j) -= l * work(k, j);
        work(j, i) = work(i, j);
      }
    }
  }
  out.positive_definite = true;
  for (const auto& d : out.pivots)
    if (d <= 0) out.positive_definite = false;
  return out;
}

/// Recomputes P^T L D L^T P from an LDL result.
inline QMatrix ldl_reconstruct(const LdlResult& f) {
  const std::size_t n = f.perm.size();
  QMatrix permuted(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k <= j; ++k) s += f.lower(i, k) * f.pivots[k] * f.lower(j, k);
      permuted(i, j) = s;
      permuted(j, i) = s;
    }
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(f.perm[i], f.perm[j]) = permuted(i, j);
  return out;
}

}  // namespace hpp
