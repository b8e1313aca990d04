#pragma once

// Exact dense linear algebra over Q.

#include <cstddef>
#include <utility>
#include <vector>

#include "reflexlab/rational.hpp"

namespace reflexlab {

using Matrix = std::vector<std::vector<Rational>>;

inline Matrix zero_matrix(std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Rational>(cols, Rational(0)));
}

/// Row-reduces m in place; returns the rank.
inline std::size_t row_reduce(Matrix& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const Rational inv = 1 / m[rank][c];
    for (std::size_t k = c; k < cols; ++k) m[rank][k] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      const Rational factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank(Matrix m) { return row_reduce(m); }

inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(m[pivot][c]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      std::swap(m[c], m[pivot]);
      det = -det;
    }
    det *= m[c][c];
    const Rational inv = 1 / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      const Rational factor = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

/// Determinants of the leading k x k blocks, k = 1..n.
inline std::vector<Rational> leading_minors(const Matrix& m) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    Matrix block(k, std::vector<Rational>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) block[r][c] = m[r][c];
    out.push_back(determinant(std::move(block)));
  }
  return out;
}

inline bool is_symmetric(const Matrix& m) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < r; ++c)
      if (m[r][c] != m[c][r]) return false;
  return true;
}

/// Sylvester's criterion.
inline bool is_positive_definite(const Matrix& m) {
  if (!is_symmetric(m)) return false;
  for (const auto& d : leading_minors(m))
    if (sgn(d) <= 0) return false;
  return true;
}

}  // namespace reflexlab
