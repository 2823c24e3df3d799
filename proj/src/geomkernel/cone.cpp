#include "funcval/cone.hpp"

#include "funcval/errors.hpp"

namespace funcval {

namespace {

using Bits = boost::dynamic_bitset<>;

int sign_of(const Rational& r) { return r.sign(); }

}  // namespace

bool combinatorially_adjacent(const std::vector<Bits>& tight, std::size_t a, std::size_t b,
                              std::size_t min_common) {
  Bits common = tight[a] & tight[b];
  if (common.count() < min_common) return false;
  for (std::size_t r = 0; r < tight.size(); ++r) {
    if (r == a || r == b) continue;
    if (common.is_subset_of(tight[r])) return false;
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> ConeGenerators::adjacent_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t min_common = dim >= 2 ? dim - 2 : 0;
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (combinatorially_adjacent(tight, i, j, min_common)) pairs.emplace_back(i, j);
  return pairs;
}

ConeGenerators extreme_rays(const Matrix& rows, std::size_t dim) {
  for (const auto& row : rows) {
    if (row.size() != dim) throw FuncvalError(ErrorCode::DimensionMismatch, "cone row length");
  }
  const std::size_t m = rows.size();
  auto basis = independent_rows(rows);
  if (basis.size() < dim) {
    throw FuncvalError(ErrorCode::Degenerate, "cone is not pointed (constraints of rank " +
                                                  std::to_string(basis.size()) + " in R^" +
                                                  std::to_string(dim) + ")");
  }

  // Start from the simplicial cone cut out by an independent subset: its
  // rays are the columns of -B^{-1}.
  Matrix b(dim);
  for (std::size_t i = 0; i < dim; ++i) b[i] = rows[basis[i]];
  Matrix inv = inverse(b);
  std::vector<Vec> rays;
  std::vector<Bits> tight;
  for (std::size_t j = 0; j < dim; ++j) {
    Vec r(dim);
    for (std::size_t i = 0; i < dim; ++i) r[i] = -inv[i][j];
    rays.push_back(primitive_integer(r));
    Bits t(m);
    for (std::size_t i = 0; i < dim; ++i)
      if (i != j) t.set(basis[i]);
    tight.push_back(std::move(t));
  }

  std::vector<bool> done(m, false);
  for (auto i : basis) done[i] = true;
  const std::size_t min_common = dim >= 2 ? dim - 2 : 0;

  for (std::size_t k = 0; k < m; ++k) {
    if (done[k]) continue;
    done[k] = true;
    const Vec& a = rows[k];
    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(a, rays[r]);
      int s = sign_of(val[r]);
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else tight[r].set(k);
    }
    if (pos.empty()) continue;

    std::vector<Vec> next_rays;
    std::vector<Bits> next_tight;
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        // Adjacency is decided against the rows processed so far, i.e. the
        // tight sets before row k is added.
        if (!combinatorially_adjacent(tight, p, q, min_common)) continue;
        Vec r(dim);
        for (std::size_t c = 0; c < dim; ++c) r[c] = val[p] * rays[q][c] - val[q] * rays[p][c];
        Bits t = tight[p] & tight[q];
        t.set(k);
        next_rays.push_back(primitive_integer(r));
        next_tight.push_back(std::move(t));
      }
    }
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (sign_of(val[r]) <= 0) {
        next_rays.push_back(std::move(rays[r]));
        next_tight.push_back(std::move(tight[r]));
      }
    }
    rays = std::move(next_rays);
    tight = std::move(next_tight);
  }

  ConeGenerators out;
  out.dim = dim;
  out.rays = std::move(rays);
  out.tight = std::move(tight);
  return out;
}

}  // namespace funcval
