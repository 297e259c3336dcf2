#pragma once

#include <optional>
#include <vector>

#include "mapcone/rational.hpp"

namespace mapcone {

using QRow = std::vector<Rational>;
using QMatrix = std::vector<QRow>;

struct RrefResult {
  QMatrix mat;
  std::vector<int> pivots;  // pivot column per nonzero row
};

/// Reduced row echelon form by exact Gauss-Jordan elimination.
inline RrefResult rref(QMatrix m) {
  RrefResult out;
  if (m.empty()) return out;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.mat = std::move(m);
  return out;
}

inline int rank(const QMatrix& a) {
  return static_cast<int>(rref(a).pivots.size());
}

/// Particular solution of A x = b with all free variables set to zero,
/// or nullopt when the system is inconsistent.
inline std::optional<QRow> solve(const QMatrix& a, const QRow& b) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  QMatrix aug(rows, QRow(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  RrefResult r = rref(std::move(aug));
  QRow x(cols, Rational(0));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == static_cast<int>(cols)) return std::nullopt;
    x[r.pivots[i]] = r.mat[i][cols];
  }
  return x;
}

/// Basis of the null space of A, one row per kernel vector.
inline QMatrix kernel_basis(const QMatrix& a) {
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  if (cols == 0) return {};
  RrefResult r = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : r.pivots) is_pivot[p] = true;
  QMatrix out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QRow v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
      v[r.pivots[i]] = -r.mat[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

/// Whether v lies in the row span of `rows`.
inline bool in_span(const QMatrix& rows, const QRow& v) {
  if (rows.empty()) {
    for (const Rational& c : v)
      if (c != 0) return false;
    return true;
  }
  QMatrix base = rows;
  int r0 = rank(base);
  base.push_back(v);
  return rank(base) == r0;
}

/// Coordinates of v in the given spanning rows (free variables zero), or
/// nullopt when v is outside the span.
inline std::optional<QRow> coordinates_in_span(const QMatrix& rows, const QRow& v) {
  if (rows.empty()) {
    for (const Rational& c : v)
      if (c != 0) return std::nullopt;
    return QRow{};
  }
  std::size_t dim = rows[0].size();
  QMatrix a(dim, QRow(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) a[j][i] = rows[i][j];
  QRow b(v);
  return solve(a, b);
}

}  // namespace mapcone
