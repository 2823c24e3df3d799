#pragma once

#include "funcval/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace funcval {

/// normal . x <= offset
struct Halfspace {
  Vec normal;
  Rational offset;

  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
  bool operator<(const Halfspace& o) const;
};

/// Scales a halfspace so that its normal is a primitive integer vector.
Halfspace normalized(const Halfspace& h);

/// Intersection of finitely many halfspaces. No invariants are enforced on
/// construction; `to_vrep` decides boundedness and emptiness.
struct PolytopeH {
  std::size_t n = 0;
  std::vector<Halfspace> halfspaces;

  bool contains(const Vec& x) const;
};

/// A nonempty polytope given by its vertices. Built only through `hull`, which
/// also computes a canonical facet description, so every instance carries
/// both representations.
class PolytopeV {
 public:
  /// Convex hull of a nonempty point set of common dimension.
  static PolytopeV hull(const std::vector<Vec>& points);

  std::size_t dim() const { return n_; }
  /// Dimension of the affine hull (0 for a point).
  std::size_t affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == n_; }

  /// Vertices in lexicographic order.
  const std::vector<Vec>& vertices() const { return vertices_; }

  /// Canonical halfspace description: sorted facets with primitive integer
  /// normals, followed by equality pairs when the polytope is not
  /// full-dimensional.
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  std::size_t facet_count() const { return facet_vertices_.size(); }
  /// Vertex incidence of facet i (the first facet_count() halfspaces).
  const boost::dynamic_bitset<>& facet_vertices(std::size_t i) const { return facet_vertices_[i]; }

  bool contains(const Vec& x) const;
  PolytopeH to_hrep() const { return PolytopeH{n_, halfspaces_}; }

  bool operator==(const PolytopeV& o) const { return n_ == o.n_ && vertices_ == o.vertices_; }
  bool operator!=(const PolytopeV& o) const { return !(*this == o); }

 private:
  std::size_t n_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Halfspace> halfspaces_;
  std::vector<boost::dynamic_bitset<>> facet_vertices_;
};

PolytopeV hull(const std::vector<Vec>& points);
PolytopeH to_hrep(const PolytopeV& p);

/// Vertex enumeration. Returns nullopt when the halfspaces have no common
/// point and throws Unbounded when the intersection is unbounded.
std::optional<PolytopeV> to_vrep(const PolytopeH& h);

/// Canonical halfspace form of a bounded nonempty H-polytope.
PolytopeH canonical(const PolytopeH& h);

/// Exact Lebesgue measure; zero unless full-dimensional.
Rational volume(const PolytopeV& p);
Rational volume(const PolytopeH& p);

/// Simplices (vertex index lists of size n+1) of a pulling triangulation of
/// a full-dimensional polytope given by its points and facet incidences.
std::vector<std::vector<std::size_t>> triangulate(
    const std::vector<Vec>& points, const std::vector<boost::dynamic_bitset<>>& facets);

/// Polar body {y : x . y <= 1 for x in P}. Throws OriginNotInterior.
PolytopeH polar(const PolytopeV& p);
PolytopeV polar(const PolytopeH& p);
PolytopeV polar_body(const PolytopeV& p);
bool origin_interior(const PolytopeV& p);

std::optional<PolytopeV> intersect(const PolytopeV& p, const PolytopeV& q);
std::optional<PolytopeV> intersect_halfspace(const PolytopeV& p, const Halfspace& h);
PolytopeV conv_union(const PolytopeV& p, const PolytopeV& q);

/// Euclidean distance from x to P.
double distance(const Vec& x, const PolytopeV& p);
/// Squared distance, exact.
Rational squared_distance(const Vec& x, const PolytopeV& p);
double hausdorff_distance(const PolytopeV& p, const PolytopeV& q);

/// Matrix of determinant exactly one.
struct UnimodularMap {
  Matrix matrix;
};

UnimodularMap random_unimodular(std::size_t n, std::uint64_t seed, std::size_t shear_count);
PolytopeV apply_map(const Matrix& phi, const PolytopeV& p);
PolytopeV translate(const PolytopeV& p, const Vec& x);
PolytopeV scale(const PolytopeV& p, const Rational& lambda);

enum class BodyKind { Simplex, TDelta, Cube, Box, Cross, Ball };

/// Parameters: TDelta {delta}, Box {lambda}, Ball {vertex count}; others none.
PolytopeV standard_body(BodyKind kind, std::size_t n, const std::vector<Rational>& params = {});
void check_t_delta_range(std::size_t n, const Rational& delta);

struct TDeltaLemmaReport {
  bool union_identity = false;
  bool intersection_identity = false;
  bool increment_identity = false;
  Rational increment;    // computed from polar bodies
  Rational closed_form;  // the closed-form expression
  bool all() const { return union_identity && intersection_identity && increment_identity; }
};

/// Checks the splitting identities of t*T_delta along x_1 and the polar
/// volume increment of T_delta cut at x_1 <= rho, all in exact arithmetic.
TDeltaLemmaReport lemma_t_delta_suite(std::size_t n, const Rational& delta, const Rational& rho,
                                      const Rational& b, const Rational& t);

/// Volume of conv(delta*C^n u conv{0, c_1 e_1, ..., c_n e_n}) against the
/// product formula (1/n!) prod(max(c_i, delta) + delta).
struct ConvUnionReport {
  Rational computed;
  Rational formula;
  bool pass() const { return computed == formula; }
};
ConvUnionReport conv_union_volume_check(const Vec& c, const Rational& delta);

}  // namespace funcval
