#pragma once

#include "funcval/rational.hpp"

#include <optional>
#include <vector>

namespace funcval {

/// Dense row-major rational matrix.
using Matrix = std::vector<Vec>;

Matrix identity_matrix(std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
Vec multiply(const Matrix& a, const Vec& x);

Rational determinant(Matrix m);
std::size_t rank(Matrix m);

/// Indices of a maximal linearly independent subset of the rows, chosen
/// greedily in index order.
std::vector<std::size_t> independent_rows(const Matrix& m);

/// Pivot columns of the reduced row echelon form of `m`.
std::vector<std::size_t> pivot_columns(Matrix m);

/// Basis of {x : m x = 0}; `cols` is needed when `m` has no rows.
Matrix nullspace(const Matrix& m, std::size_t cols);

/// Solution of the square system a x = b, or nullopt when singular.
std::optional<Vec> solve(Matrix a, Vec b);

/// Throws Degenerate when singular.
Matrix inverse(const Matrix& m);

/// Dimension of the affine hull of `points` (-1 for an empty set).
long affine_rank(const std::vector<Vec>& points);

}  // namespace funcval
