#pragma once

#include "funcval/polytope.hpp"

#include <map>
#include <optional>
#include <vector>

namespace funcval {

/// x -> a . x + b
struct AffinePiece {
  Vec a;
  Rational b;

  Rational operator()(const Vec& x) const { return dot(a, x) + b; }
  bool operator==(const AffinePiece& o) const { return a == o.a && b == o.b; }
  bool operator<(const AffinePiece& o) const;
};

/// A rational number or +infinity.
struct Extended {
  Rational value;
  bool infinite = false;

  static Extended inf() { return Extended{Rational(0), true}; }
  bool operator==(const Extended& o) const {
    return infinite == o.infinite && (infinite || value == o.value);
  }
};

/// u(x) = max_i (a_i . x + b_i), finite on all of R^n.
struct PacfFinite {
  std::size_t n = 0;
  std::vector<AffinePiece> pieces;

  Rational operator()(const Vec& x) const;
  bool operator==(const PacfFinite& o) const { return n == o.n && pieces == o.pieces; }
};

/// w(x) = max_i (a_i . x + b_i) on a bounded domain, +infinity outside.
struct PacfRestricted {
  std::size_t n = 0;
  std::vector<AffinePiece> pieces;
  PolytopeV domain;

  Extended operator()(const Vec& x) const;
  bool operator==(const PacfRestricted& o) const {
    return n == o.n && pieces == o.pieces && domain == o.domain;
  }
};

enum class SpecialKind {
  ConeFn,         // l_K + t, the gauge of K shifted by t
  IndicatorPlus,  // I_K + t
  SupportMinus,   // h_K - t
};

struct SpecialFn {
  SpecialKind kind;
  PolytopeV body;
  Rational shift;

  Extended operator()(const Vec& x) const;
};

/// Bounds the combinatorial size of inputs to the exact conjugation engine.
struct ComplexityLimits {
  std::size_t max_dim = 4;
  std::size_t max_pieces = 256;
};
ComplexityLimits& complexity_limits();

PacfFinite make_finite(std::size_t n, std::vector<AffinePiece> pieces);
PacfRestricted make_restricted(std::vector<AffinePiece> pieces, const PolytopeV& domain);

/// Drops pieces that never attain the maximum on a full-dimensional set and
/// sorts the remaining ones.
PacfFinite canonicalize(const PacfFinite& u);
PacfRestricted canonicalize(const PacfRestricted& w);

/// The convex conjugate; exact in both directions.
PacfRestricted conjugate(const PacfFinite& u);
PacfFinite conjugate(const PacfRestricted& w);
SpecialFn conjugate(const SpecialFn& f);

/// Piece-list form of a special function where one exists.
PacfFinite to_finite(const SpecialFn& f);       // ConeFn, SupportMinus
PacfRestricted to_restricted(const SpecialFn& f);  // IndicatorPlus
/// l_K for a body with the origin in its interior.
PacfFinite cone_function(const PolytopeV& k, const Rational& shift = Rational(0));

bool is_coercive(const PacfFinite& u);

struct MinResult {
  Rational value;
  Vec argmin;
};
/// Minimum and a minimizer (a vertex of the tessellation). Throws NotCoercive.
MinResult min_value(const PacfFinite& u);
MinResult min_value(const PacfRestricted& w);

/// {u <= t}, or nullopt when empty.
std::optional<PolytopeV> sublevel(const PacfFinite& u, const Rational& t);
std::optional<PolytopeV> sublevel(const PacfRestricted& w, const Rational& t);

PacfFinite max_fn(const PacfFinite& u, const PacfFinite& v);
/// Throws EmptyResult when the domains do not meet.
PacfRestricted max_fn(const PacfRestricted& u, const PacfRestricted& v);
/// nullopt when min(u, v) is not convex.
std::optional<PacfFinite> min_fn(const PacfFinite& u, const PacfFinite& v);
std::optional<PacfRestricted> min_fn(const PacfRestricted& u, const PacfRestricted& v);

/// (u^* + I_{Q^n / delta})^*
PacfFinite reg_delta(const PacfFinite& u, const Rational& delta);
PacfFinite reg_delta(const SpecialFn& f, const Rational& delta);

/// A linearity cell of the conjugate: on `cell`, u^*(y) = gradient . y - value.
struct SubdivisionCell {
  Vec gradient;
  Rational value;
  PolytopeV cell;
};
struct Subdivision {
  std::vector<SubdivisionCell> cells;
  PolytopeV ambient;
};
Subdivision subdivision(const PacfFinite& u);

/// Exact squared radius of the largest origin-centred ball inside the hull
/// of the slopes, and its square root.
struct CoercivityMargin {
  Rational squared_radius;
  double radius = 0;
};
CoercivityMargin coercivity_margin(const PacfFinite& u);

/// u(x - y)
PacfFinite translate_fn(const PacfFinite& u, const Vec& y);
PacfRestricted translate_fn(const PacfRestricted& w, const Vec& y);
/// u o phi^{-1}
PacfFinite compose_linear(const PacfFinite& u, const Matrix& phi);
PacfRestricted compose_linear(const PacfRestricted& w, const Matrix& phi);
PacfFinite add_constant(const PacfFinite& u, const Rational& t);
PacfRestricted add_constant(const PacfRestricted& w, const Rational& t);
/// u(x / lambda), lambda > 0
PacfFinite scale_hom(const PacfFinite& u, const Rational& lambda);
PacfRestricted scale_hom(const PacfRestricted& w, const Rational& lambda);
/// (u^* v 0)^*
PacfFinite u_zero(const PacfFinite& u);

/// Largest Hausdorff distance between sublevel sets over a grid of levels.
double epiconv_distance(const PacfFinite& u, const PacfFinite& v, const std::vector<Rational>& t_grid);

}  // namespace funcval
