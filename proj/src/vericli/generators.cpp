#include "funcval/generators.hpp"

#include "funcval/errors.hpp"

namespace funcval {

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[rng() % xs.size()];
}

// Common rigid motion applied to both members of a pair: the lattice
// relations are preserved by composition with phi^{-1}, translation and a
// vertical shift.
struct Motion {
  Matrix phi;
  Vec y;
  Rational t;

  PacfFinite apply(const PacfFinite& u) const { return add_constant(translate_fn(compose_linear(u, phi), y), t); }
};

Motion random_motion(Rng& rng, std::size_t n) {
  Motion m{random_unimodular(n, rng(), 2).matrix, Vec(n), random_rational(rng, 4, 2)};
  for (auto& c : m.y) c = random_rational(rng, 3, 2);
  return m;
}

}  // namespace

Rational random_rational(Rng& rng, long range, long den) {
  return Rational(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range) / Rational(den);
}

PacfFinite random_coercive_pacf(Rng& rng, std::size_t n, std::size_t pieces, const Rational& slope_scale) {
  if (n < 1) throw FuncvalError(ErrorCode::ParameterOutOfRange, "dimension must be >= 1");
  pieces = std::max(pieces, n + 1);
  std::vector<AffinePiece> out;
  Vec centre(n);
  // |centre| stays below the inradius of the slope simplex for n <= 3.
  for (auto& c : centre) c = random_rational(rng, 2, 8);
  for (std::size_t i = 0; i <= n; ++i) {
    Vec a = i < n ? scale(unit_vec(n, i), Rational(2)) : Vec(n, Rational(-2));
    out.push_back({scale(add(a, centre), slope_scale), random_rational(rng, 6, 2)});
  }
  while (out.size() < pieces) {
    Vec a(n);
    for (auto& x : a) x = random_rational(rng, 6, 2);
    out.push_back({scale(a, slope_scale), random_rational(rng, 6, 2)});
  }
  PacfFinite u = make_finite(n, std::move(out));
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::Degenerate, "drawn slopes do not surround the origin");
  return u;
}

PolytopeV random_body(Rng& rng, std::size_t n, std::size_t extra) {
  std::vector<Vec> pts;
  Rational r = Rational(static_cast<long>(2 + rng() % 3)) / 4;  // 1/2, 3/4 or 1
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(scale(unit_vec(n, i), r));
    pts.push_back(scale(unit_vec(n, i), -r));
  }
  for (std::size_t k = 0; k < extra; ++k) {
    Vec p(n);
    for (auto& x : p) x = random_rational(rng, 6, 4);
    pts.push_back(std::move(p));
  }
  return hull(pts);
}

std::string family_name(PairFamily f) {
  switch (f) {
    case PairFamily::SplitCone: return "split-cone";
    case PairFamily::VerticalShift: return "vertical-shift";
    case PairFamily::TDeltaSplit: return "tdelta-split";
  }
  return "unknown";
}

PacfFinite truncated_cone(std::size_t n, const Rational& delta, const Rational& rho, const Rational& b) {
  PacfFinite cone = cone_function(standard_body(BodyKind::TDelta, n, {delta}));
  // z >= b + (x_1 - b (1 + delta)) / rho
  std::vector<AffinePiece> pieces = cone.pieces;
  pieces.push_back({scale(unit_vec(n, 0), 1 / rho), b - b * (1 + delta) / rho});
  return canonicalize(make_finite(n, std::move(pieces)));
}

PacfFinite translated_cone(std::size_t n, const Rational& delta, const Rational& b) {
  Vec x_delta(n, -delta);
  x_delta[0] = 1 + delta;
  PacfFinite cone = cone_function(standard_body(BodyKind::TDelta, n, {delta}));
  return add_constant(translate_fn(cone, scale(x_delta, b)), b);
}

GeneratedPair generate_pair(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto family = static_cast<PairFamily>(rng() % 3);
  return generate_pair(n, rng(), family);
}

GeneratedPair generate_pair(std::size_t n, std::uint64_t seed, PairFamily family) {
  if (n < 1 || n > 3) throw FuncvalError(ErrorCode::ParameterOutOfRange, "pairs are generated for n <= 3");
  if (family == PairFamily::TDeltaSplit && n < 2) family = PairFamily::SplitCone;
  Rng rng(seed);
  // Degenerate draws (a split that misses the body, an unlucky motion) are
  // redrawn; every family is convex by construction, so this rarely loops.
  for (int attempt = 0; attempt < 64; ++attempt) {
    Motion m = random_motion(rng, n);
    PacfFinite u, v;
    switch (family) {
      case PairFamily::SplitCone: {
        PolytopeV p = rng() % 4 == 0 ? standard_body(BodyKind::TDelta, n, {Rational(1, 4)}) : random_body(rng, n, 2 + rng() % 3);
        Rational s = Rational(static_cast<long>(1 + rng() % 3), 8);  // 1/8 .. 3/8
        auto k = intersect_halfspace(p, Halfspace{unit_vec(n, 0), s});
        auto l = intersect_halfspace(p, Halfspace{scale(unit_vec(n, 0), Rational(-1)), s});
        if (!k || !l || !origin_interior(*k) || !origin_interior(*l)) continue;
        u = cone_function(*k);
        v = cone_function(*l);
        break;
      }
      case PairFamily::VerticalShift: {
        u = random_coercive_pacf(rng, n, n + 1 + rng() % 4);
        v = add_constant(u, Rational(static_cast<long>(1 + rng() % 6), 2));
        break;
      }
      case PairFamily::TDeltaSplit: {
        std::vector<Rational> deltas{Rational(1, 5), Rational(1, 4), Rational(2, 5)};
        std::vector<Rational> rhos{Rational(1, 3), Rational(1, 2), Rational(2, 3)};
        std::vector<Rational> bs{Rational(1, 2), Rational(1), Rational(2)};
        const Rational delta = pick(rng, deltas), rho = pick(rng, rhos), b = pick(rng, bs);
        u = truncated_cone(n, delta, rho, b);
        v = translated_cone(n, delta, b);
        break;
      }
    }
    u = m.apply(u);
    v = m.apply(v);
    auto mn = min_fn(u, v);
    if (!mn) continue;
    return GeneratedPair{family, u, v, *mn};
  }
  throw FuncvalError(ErrorCode::Degenerate, "could not draw an admissible pair");
}

}  // namespace funcval
