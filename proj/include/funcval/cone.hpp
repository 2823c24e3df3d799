#pragma once

#include "funcval/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <utility>
#include <vector>

namespace funcval {

/// Extreme rays of a pointed polyhedral cone {X : rows[i] . X <= 0}.
struct ConeGenerators {
  std::size_t dim = 0;
  /// Primitive integer direction of each extreme ray.
  std::vector<Vec> rays;
  /// tight[r][i] is set when rows[i] . rays[r] == 0.
  std::vector<boost::dynamic_bitset<>> tight;

  /// Pairs (i, j), i < j, of adjacent extreme rays (they span a 2-face).
  std::vector<std::pair<std::size_t, std::size_t>> adjacent_pairs() const;
};

/// Double description method. Throws Degenerate when the cone contains a
/// line (the rows do not span R^dim).
ConeGenerators extreme_rays(const Matrix& rows, std::size_t dim);

/// Combinatorial adjacency test: no third generator is tight on every row
/// that is tight on both `a` and `b`.
bool combinatorially_adjacent(const std::vector<boost::dynamic_bitset<>>& tight, std::size_t a,
                              std::size_t b, std::size_t min_common);

}  // namespace funcval
