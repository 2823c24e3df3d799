#include "funcval/linalg.hpp"

#include "funcval/errors.hpp"

#include <utility>

namespace funcval {

namespace {

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) {
        if (!m[r][k].is_zero()) m[i][k] -= f * m[r][k];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  if (a[0].size() != b.size()) throw FuncvalError(ErrorCode::DimensionMismatch, "matrix product");
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  Matrix c(a.size(), Vec(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Vec multiply(const Matrix& a, const Vec& x) {
  Vec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<std::size_t> chosen;
  Matrix basis;  // kept in echelon form
  std::vector<std::size_t> lead;
  for (std::size_t i = 0; i < m.size(); ++i) {
    Vec v = m[i];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!v[lead[b]].is_zero()) {
        Rational f = v[lead[b]] / basis[b][lead[b]];
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (!basis[b][k].is_zero()) v[k] -= f * basis[b][k];
        }
      }
    }
    std::size_t l = 0;
    while (l < v.size() && v[l].is_zero()) ++l;
    if (l == v.size()) continue;
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
  }
  return chosen;
}

std::vector<std::size_t> pivot_columns(Matrix m) { return rref(m); }

Matrix nullspace(const Matrix& m, std::size_t cols) {
  Matrix r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(Matrix a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[i][k] -= f * a[c][k];
    }
  }
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Rational s = a[ii][n];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a[ii][k] * x[k];
    x[ii] = s / a[ii][ii];
  }
  return x;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix aug(n);
  for (std::size_t i = 0; i < n; ++i) {
    aug[i] = m[i];
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) {
    throw FuncvalError(ErrorCode::Degenerate, "singular matrix");
  }
  Matrix inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

long affine_rank(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  Matrix diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return static_cast<long>(rank(std::move(diffs)));
}

}  // namespace funcval
