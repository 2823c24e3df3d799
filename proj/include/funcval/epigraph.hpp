#pragma once

#include "funcval/convexfn.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <utility>
#include <vector>

namespace funcval {

/// Vertices, extreme rays and edges of the epigraph of a polyhedral function
/// max_i (a_i . x + b_i) restricted to an optional polyhedral domain.
///
/// Rows are indexed pieces first, then domain halfspaces. The epigraph must
/// be line-free: the slopes (finite case) or domain normals (restricted case)
/// have to span R^n.
struct EpigraphSkeleton {
  using Bits = boost::dynamic_bitset<>;

  std::size_t n = 0;
  std::size_t piece_rows = 0;
  std::size_t domain_rows = 0;

  std::vector<Vec> vertex_x;
  std::vector<Rational> vertex_z;
  std::vector<Bits> vertex_tight;

  std::vector<Vec> ray_x;
  std::vector<Rational> ray_z;
  std::vector<Bits> ray_tight;

  std::vector<std::pair<std::size_t, std::size_t>> vertex_edges;  // vertex, vertex
  std::vector<std::pair<std::size_t, std::size_t>> ray_edges;     // vertex, ray

  static EpigraphSkeleton build(std::size_t n, const std::vector<AffinePiece>& pieces,
                                const std::vector<Halfspace>& domain = {});
  static EpigraphSkeleton of(const PacfFinite& u);
  static EpigraphSkeleton of(const PacfRestricted& w);

  /// Rank of the homogenized generators (x, z, 1) and (dx, dz, 0); equals
  /// one more than the dimension of the epigraph.
  std::size_t generator_rank = 0;

  static constexpr std::size_t kAllRows = static_cast<std::size_t>(-1);
  /// Homogenized generators tight on `row` (all of them for kAllRows).
  Matrix tight_generators(std::size_t row) const;
  /// True when row `row` supports a facet of the epigraph.
  bool row_is_facet(std::size_t row) const;
  /// All recession directions point strictly upwards or vertically.
  bool coercive() const;
};

/// V(t) = volume of {u <= t} as an exact piecewise polynomial in t.
///
/// V vanishes below breaks.front(); on [breaks[k], breaks[k+1]] (and on
/// [breaks.back(), inf) for the last entry) it equals
/// sum_j coeffs[k][j] * (t - breaks[k])^j.
struct SublevelProfile {
  std::size_t n = 0;
  std::vector<Rational> breaks;
  std::vector<std::vector<Rational>> coeffs;

  static SublevelProfile build(const EpigraphSkeleton& skel);

  Rational operator()(const Rational& t) const;
  double operator()(double t) const;
  /// V'(t) on the interior of interval k.
  double derivative(std::size_t k, double t) const;
};

/// Discrete Monge-Ampere data: value u(x_C) mapped to the total volume of the
/// subgradient cells at tessellation vertices with that value.
using MongeAmpereMeasure = std::map<Rational, Rational>;

MongeAmpereMeasure monge_ampere_measure(const PacfFinite& u);
/// Same measure read off the linearity cells of the restricted function w:
/// value -b_j with the volume of the cell where piece j is active.
MongeAmpereMeasure hessian_dual_measure(const PacfRestricted& w);

}  // namespace funcval
