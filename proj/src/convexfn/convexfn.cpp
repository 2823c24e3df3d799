#include "funcval/convexfn.hpp"

#include "funcval/epigraph.hpp"
#include "funcval/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace funcval {

namespace {

using Bits = boost::dynamic_bitset<>;

void check_limits(std::size_t n, std::size_t pieces) {
  const auto& lim = complexity_limits();
  if (n == 0 || n > lim.max_dim) {
    throw FuncvalError(ErrorCode::ComplexityLimit, "dimension " + std::to_string(n) + " outside [1, " +
                                                       std::to_string(lim.max_dim) + "]");
  }
  if (pieces > lim.max_pieces) {
    throw FuncvalError(ErrorCode::ComplexityLimit, std::to_string(pieces) + " pieces exceed the limit of " +
                                                       std::to_string(lim.max_pieces));
  }
}

void check_pieces(std::size_t n, const std::vector<AffinePiece>& pieces) {
  if (pieces.empty()) throw FuncvalError(ErrorCode::EmptyResult, "a function needs at least one piece");
  for (const auto& p : pieces) {
    if (p.a.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "piece slope length");
  }
}

std::vector<AffinePiece> sorted_unique(std::vector<AffinePiece> pieces) {
  std::sort(pieces.begin(), pieces.end());
  pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
  return pieces;
}

// Indices of the pieces whose rows are facets of the epigraph. Pieces that
// support the same facet (possible over a lower-dimensional domain) collapse
// to the smallest one.
std::vector<std::size_t> facet_pieces(const EpigraphSkeleton& s) {
  std::map<Bits, std::size_t> by_face;
  const std::size_t gens = s.vertex_x.size() + s.ray_x.size();
  for (std::size_t i = 0; i < s.piece_rows; ++i) {
    if (!s.row_is_facet(i)) continue;
    Bits face(gens);
    for (std::size_t v = 0; v < s.vertex_x.size(); ++v)
      if (s.vertex_tight[v][i]) face.set(v);
    for (std::size_t r = 0; r < s.ray_x.size(); ++r)
      if (s.ray_tight[r][i]) face.set(s.vertex_x.size() + r);
    by_face.emplace(face, i);  // pieces are sorted, so the first is smallest
  }
  std::vector<std::size_t> keep;
  for (const auto& [face, i] : by_face) keep.push_back(i);
  std::sort(keep.begin(), keep.end());
  return keep;
}

std::vector<Vec> slopes_of(const std::vector<AffinePiece>& pieces) {
  std::vector<Vec> out;
  for (const auto& p : pieces) out.push_back(p.a);
  return out;
}

// Pieces of the conjugate read off the vertices of the epigraph.
std::vector<AffinePiece> dual_pieces(const EpigraphSkeleton& s) {
  std::vector<AffinePiece> out;
  for (std::size_t v = 0; v < s.vertex_x.size(); ++v) out.push_back({s.vertex_x[v], -s.vertex_z[v]});
  return sorted_unique(std::move(out));
}

void require_spanning_slopes(const PacfFinite& u) {
  if (affine_rank(slopes_of(u.pieces)) != static_cast<long>(u.n)) {
    throw FuncvalError(ErrorCode::Degenerate,
                       "slopes do not affinely span R^n, so the conjugate has a lower-dimensional domain");
  }
}

PolytopeV cube_of_radius(std::size_t n, const Rational& r) { return scale(standard_body(BodyKind::Cube, n), r); }

// V_e == V_a + V_b - V_c on every interval of the merged breakpoints; each
// side is a polynomial of degree <= n there, so n + 1 interior samples
// decide the identity exactly.
bool volume_identity(const SublevelProfile& e, const SublevelProfile& a, const SublevelProfile& b,
                     const SublevelProfile* c) {
  std::set<Rational> merged;
  for (const auto* p : {&e, &a, &b, c}) {
    if (p) merged.insert(p->breaks.begin(), p->breaks.end());
  }
  std::vector<Rational> pts(merged.begin(), merged.end());
  if (pts.empty()) return true;
  pts.push_back(pts.back() + 1);
  const std::size_t n = e.n;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    for (std::size_t j = 1; j <= n + 1; ++j) {
      Rational t = pts[k] + (pts[k + 1] - pts[k]) * Rational(static_cast<long>(j), static_cast<long>(n + 2));
      Rational rhs = a(t) + b(t) - (c ? (*c)(t) : Rational(0));
      if (e(t) != rhs) return false;
    }
  }
  return true;
}

}  // namespace

ComplexityLimits& complexity_limits() {
  static ComplexityLimits limits;
  return limits;
}

bool AffinePiece::operator<(const AffinePiece& o) const {
  if (a != o.a) return a < o.a;
  return b < o.b;
}

Rational PacfFinite::operator()(const Vec& x) const {
  if (x.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "evaluation point length");
  Rational best = pieces.at(0)(x);
  for (std::size_t i = 1; i < pieces.size(); ++i) best = std::max(best, pieces[i](x));
  return best;
}

Extended PacfRestricted::operator()(const Vec& x) const {
  if (x.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "evaluation point length");
  if (!domain.contains(x)) return Extended::inf();
  Rational best = pieces.at(0)(x);
  for (std::size_t i = 1; i < pieces.size(); ++i) best = std::max(best, pieces[i](x));
  return Extended{best};
}

Extended SpecialFn::operator()(const Vec& x) const {
  if (x.size() != body.dim()) throw FuncvalError(ErrorCode::DimensionMismatch, "evaluation point length");
  switch (kind) {
    case SpecialKind::ConeFn:
      return Extended{to_finite(*this)(x)};
    case SpecialKind::IndicatorPlus:
      return body.contains(x) ? Extended{shift} : Extended::inf();
    case SpecialKind::SupportMinus:
      return Extended{to_finite(*this)(x)};
  }
  return Extended::inf();
}

PacfFinite make_finite(std::size_t n, std::vector<AffinePiece> pieces) {
  check_pieces(n, pieces);
  return PacfFinite{n, std::move(pieces)};
}

PacfRestricted make_restricted(std::vector<AffinePiece> pieces, const PolytopeV& domain) {
  check_pieces(domain.dim(), pieces);
  return PacfRestricted{domain.dim(), std::move(pieces), domain};
}

PacfFinite canonicalize(const PacfFinite& u) {
  check_pieces(u.n, u.pieces);
  auto pieces = sorted_unique(u.pieces);
  check_limits(u.n, pieces.size());
  const Vec& a0 = pieces[0].a;
  Matrix diffs;
  for (const auto& p : pieces) diffs.push_back(sub(p.a, a0));
  auto basis_idx = independent_rows(diffs);
  const std::size_t r = basis_idx.size();

  if (r == 0) {
    // All slopes coincide: the largest offset wins.
    return PacfFinite{u.n, {pieces.back()}};
  }
  std::vector<AffinePiece> local;
  if (r == u.n) {
    local = pieces;
  } else {
    // u(x) = a0 . x + g(Bx) with g defined on R^r; redundancy is decided
    // for g, whose slopes span.
    Matrix basis;
    for (auto i : basis_idx) basis.push_back(diffs[i]);
    Matrix gram = multiply(basis, transpose(basis));
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      Vec c = *solve(gram, multiply(basis, diffs[i]));
      local.push_back({c, pieces[i].b});
    }
  }
  auto skel = EpigraphSkeleton::build(r, local);
  std::vector<AffinePiece> keep;
  for (auto i : facet_pieces(skel)) keep.push_back(pieces[i]);
  return PacfFinite{u.n, std::move(keep)};
}

PacfRestricted canonicalize(const PacfRestricted& w) {
  check_pieces(w.n, w.pieces);
  auto pieces = sorted_unique(w.pieces);
  check_limits(w.n, pieces.size());
  auto skel = EpigraphSkeleton::build(w.n, pieces, w.domain.halfspaces());
  std::vector<AffinePiece> keep;
  for (auto i : facet_pieces(skel)) keep.push_back(pieces[i]);
  return PacfRestricted{w.n, std::move(keep), w.domain};
}

PacfRestricted conjugate(const PacfFinite& u) {
  check_pieces(u.n, u.pieces);
  check_limits(u.n, u.pieces.size());
  require_spanning_slopes(u);
  auto skel = EpigraphSkeleton::of(u);
  return PacfRestricted{u.n, dual_pieces(skel), PolytopeV::hull(slopes_of(u.pieces))};
}

PacfFinite conjugate(const PacfRestricted& w) {
  check_pieces(w.n, w.pieces);
  check_limits(w.n, w.pieces.size());
  auto skel = EpigraphSkeleton::of(w);
  return PacfFinite{w.n, dual_pieces(skel)};
}

SpecialFn conjugate(const SpecialFn& f) {
  switch (f.kind) {
    case SpecialKind::ConeFn:
      return SpecialFn{SpecialKind::IndicatorPlus, polar_body(f.body), -f.shift};
    case SpecialKind::IndicatorPlus:
      return SpecialFn{SpecialKind::SupportMinus, f.body, f.shift};
    case SpecialKind::SupportMinus:
      return SpecialFn{SpecialKind::IndicatorPlus, f.body, f.shift};
  }
  throw FuncvalError(ErrorCode::UnsupportedInput, "unknown special function kind");
}

PacfFinite to_finite(const SpecialFn& f) {
  std::vector<AffinePiece> pieces;
  switch (f.kind) {
    case SpecialKind::ConeFn: {
      PolytopeV dual = polar_body(f.body);
      for (const auto& w : dual.vertices()) pieces.push_back({w, f.shift});
      break;
    }
    case SpecialKind::SupportMinus:
      for (const auto& v : f.body.vertices()) pieces.push_back({v, -f.shift});
      break;
    case SpecialKind::IndicatorPlus:
      throw FuncvalError(ErrorCode::UnsupportedInput, "an indicator is not finite");
  }
  return PacfFinite{f.body.dim(), sorted_unique(std::move(pieces))};
}

PacfRestricted to_restricted(const SpecialFn& f) {
  if (f.kind != SpecialKind::IndicatorPlus) {
    throw FuncvalError(ErrorCode::UnsupportedInput, "only indicators have a bounded domain");
  }
  return PacfRestricted{f.body.dim(), {{zero_vec(f.body.dim()), f.shift}}, f.body};
}

PacfFinite cone_function(const PolytopeV& k, const Rational& shift) {
  return to_finite(SpecialFn{SpecialKind::ConeFn, k, shift});
}

bool is_coercive(const PacfFinite& u) { return origin_interior(PolytopeV::hull(slopes_of(u.pieces))); }

MinResult min_value(const PacfFinite& u) {
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "minimum of a non-coercive function");
  auto s = EpigraphSkeleton::of(u);
  std::size_t best = 0;
  for (std::size_t v = 1; v < s.vertex_x.size(); ++v) {
    if (s.vertex_z[v] < s.vertex_z[best] || (s.vertex_z[v] == s.vertex_z[best] && s.vertex_x[v] < s.vertex_x[best]))
      best = v;
  }
  return {s.vertex_z[best], s.vertex_x[best]};
}

MinResult min_value(const PacfRestricted& w) {
  auto s = EpigraphSkeleton::of(w);
  std::size_t best = 0;
  for (std::size_t v = 1; v < s.vertex_x.size(); ++v) {
    if (s.vertex_z[v] < s.vertex_z[best] || (s.vertex_z[v] == s.vertex_z[best] && s.vertex_x[v] < s.vertex_x[best]))
      best = v;
  }
  return {s.vertex_z[best], s.vertex_x[best]};
}

std::optional<PolytopeV> sublevel(const PacfFinite& u, const Rational& t) {
  PolytopeH h{u.n, {}};
  for (const auto& p : u.pieces) h.halfspaces.push_back({p.a, t - p.b});
  return to_vrep(h);
}

std::optional<PolytopeV> sublevel(const PacfRestricted& w, const Rational& t) {
  PolytopeH h = w.domain.to_hrep();
  for (const auto& p : w.pieces) h.halfspaces.push_back({p.a, t - p.b});
  return to_vrep(h);
}

PacfFinite max_fn(const PacfFinite& u, const PacfFinite& v) {
  if (u.n != v.n) throw FuncvalError(ErrorCode::DimensionMismatch, "max of functions on different spaces");
  std::vector<AffinePiece> pieces = u.pieces;
  pieces.insert(pieces.end(), v.pieces.begin(), v.pieces.end());
  return canonicalize(PacfFinite{u.n, std::move(pieces)});
}

PacfRestricted max_fn(const PacfRestricted& u, const PacfRestricted& v) {
  if (u.n != v.n) throw FuncvalError(ErrorCode::DimensionMismatch, "max of functions on different spaces");
  auto dom = intersect(u.domain, v.domain);
  if (!dom) throw FuncvalError(ErrorCode::EmptyResult, "domains do not intersect");
  std::vector<AffinePiece> pieces = u.pieces;
  pieces.insert(pieces.end(), v.pieces.begin(), v.pieces.end());
  return canonicalize(PacfRestricted{u.n, std::move(pieces), *dom});
}

std::optional<PacfFinite> min_fn(const PacfFinite& u, const PacfFinite& v) {
  if (u.n != v.n) throw FuncvalError(ErrorCode::DimensionMismatch, "min of functions on different spaces");
  // The convex envelope of min(u, v) is (u^* v v^*)^*; it equals min(u, v)
  // iff their sublevel sets have equal volumes at every level.
  PacfFinite env = canonicalize(conjugate(max_fn(conjugate(u), conjugate(v))));
  auto pe = SublevelProfile::build(EpigraphSkeleton::of(env));
  auto pu = SublevelProfile::build(EpigraphSkeleton::of(u));
  auto pv = SublevelProfile::build(EpigraphSkeleton::of(v));
  auto pm = SublevelProfile::build(EpigraphSkeleton::of(max_fn(u, v)));
  if (!volume_identity(pe, pu, pv, &pm)) return std::nullopt;
  return env;
}

std::optional<PacfRestricted> min_fn(const PacfRestricted& u, const PacfRestricted& v) {
  if (u.n != v.n) throw FuncvalError(ErrorCode::DimensionMismatch, "min of functions on different spaces");
  PacfRestricted env = canonicalize(conjugate(max_fn(conjugate(u), conjugate(v))));
  auto pe = SublevelProfile::build(EpigraphSkeleton::of(env));
  auto pu = SublevelProfile::build(EpigraphSkeleton::of(u));
  auto pv = SublevelProfile::build(EpigraphSkeleton::of(v));
  std::optional<SublevelProfile> pm;
  if (intersect(u.domain, v.domain)) pm = SublevelProfile::build(EpigraphSkeleton::of(max_fn(u, v)));
  if (!volume_identity(pe, pu, pv, pm ? &*pm : nullptr)) return std::nullopt;
  return env;
}

namespace {

PacfFinite clip_and_conjugate(const std::vector<AffinePiece>& pieces, const PolytopeV& domain, const Rational& delta) {
  if (delta <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "reg_delta needs delta > 0");
  auto dom = intersect(domain, cube_of_radius(domain.dim(), Rational(1) / delta));
  if (!dom) throw FuncvalError(ErrorCode::EmptyResult, "conjugate domain misses the cube");
  PacfRestricted w = canonicalize(PacfRestricted{domain.dim(), pieces, *dom});
  return conjugate(w);
}

}  // namespace

PacfFinite reg_delta(const PacfFinite& u, const Rational& delta) {
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "reg_delta of a non-coercive function");
  PacfRestricted w = conjugate(u);
  return clip_and_conjugate(w.pieces, w.domain, delta);
}

PacfFinite reg_delta(const SpecialFn& f, const Rational& delta) {
  const std::size_t n = f.body.dim();
  switch (f.kind) {
    case SpecialKind::ConeFn:
    case SpecialKind::SupportMinus: {
      PacfRestricted w = to_restricted(conjugate(f));
      return clip_and_conjugate(w.pieces, w.domain, delta);
    }
    case SpecialKind::IndicatorPlus: {
      // The conjugate h_K - t is finite; restrict it to the cube.
      PacfFinite h = to_finite(conjugate(f));
      return clip_and_conjugate(h.pieces, cube_of_radius(n, Rational(1) / delta), delta);
    }
  }
  throw FuncvalError(ErrorCode::UnsupportedInput, "unknown special function kind");
}

Subdivision subdivision(const PacfFinite& u) {
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "subdivision of a non-coercive function");
  auto s = EpigraphSkeleton::of(u);
  Subdivision sub{{}, PolytopeV::hull(slopes_of(u.pieces))};
  for (std::size_t v = 0; v < s.vertex_x.size(); ++v) {
    std::vector<Vec> slopes;
    for (std::size_t i = 0; i < s.piece_rows; ++i)
      if (s.vertex_tight[v][i]) slopes.push_back(u.pieces[i].a);
    sub.cells.push_back({s.vertex_x[v], s.vertex_z[v], PolytopeV::hull(slopes)});
  }
  return sub;
}

CoercivityMargin coercivity_margin(const PacfFinite& u) {
  PolytopeV hull_a = PolytopeV::hull(slopes_of(u.pieces));
  CoercivityMargin m{Rational(0), 0.0};
  if (!origin_interior(hull_a)) return m;
  bool first = true;
  for (const auto& h : hull_a.halfspaces()) {
    Rational r2 = h.offset * h.offset / squared_norm(h.normal);
    if (first || r2 < m.squared_radius) m.squared_radius = r2;
    first = false;
  }
  m.radius = std::sqrt(to_double(m.squared_radius));
  return m;
}

PacfFinite translate_fn(const PacfFinite& u, const Vec& y) {
  if (y.size() != u.n) throw FuncvalError(ErrorCode::DimensionMismatch, "translation length");
  PacfFinite out{u.n, {}};
  for (const auto& p : u.pieces) out.pieces.push_back({p.a, p.b - dot(p.a, y)});
  out.pieces = sorted_unique(std::move(out.pieces));
  return out;
}

PacfRestricted translate_fn(const PacfRestricted& w, const Vec& y) {
  if (y.size() != w.n) throw FuncvalError(ErrorCode::DimensionMismatch, "translation length");
  PacfRestricted out{w.n, {}, translate(w.domain, y)};
  for (const auto& p : w.pieces) out.pieces.push_back({p.a, p.b - dot(p.a, y)});
  out.pieces = sorted_unique(std::move(out.pieces));
  return out;
}

PacfFinite compose_linear(const PacfFinite& u, const Matrix& phi) {
  if (phi.size() != u.n) throw FuncvalError(ErrorCode::DimensionMismatch, "linear map size");
  Matrix inv_t = inverse(transpose(phi));
  PacfFinite out{u.n, {}};
  for (const auto& p : u.pieces) out.pieces.push_back({multiply(inv_t, p.a), p.b});
  out.pieces = sorted_unique(std::move(out.pieces));
  return out;
}

PacfRestricted compose_linear(const PacfRestricted& w, const Matrix& phi) {
  if (phi.size() != w.n) throw FuncvalError(ErrorCode::DimensionMismatch, "linear map size");
  Matrix inv_t = inverse(transpose(phi));
  PacfRestricted out{w.n, {}, apply_map(phi, w.domain)};
  for (const auto& p : w.pieces) out.pieces.push_back({multiply(inv_t, p.a), p.b});
  out.pieces = sorted_unique(std::move(out.pieces));
  return out;
}

PacfFinite add_constant(const PacfFinite& u, const Rational& t) {
  PacfFinite out = u;
  for (auto& p : out.pieces) p.b += t;
  return out;
}

PacfRestricted add_constant(const PacfRestricted& w, const Rational& t) {
  PacfRestricted out = w;
  for (auto& p : out.pieces) p.b += t;
  return out;
}

PacfFinite scale_hom(const PacfFinite& u, const Rational& lambda) {
  if (lambda <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "scale_hom needs lambda > 0");
  PacfFinite out = u;
  for (auto& p : out.pieces) p.a = scale(p.a, Rational(1) / lambda);
  out.pieces = sorted_unique(std::move(out.pieces));
  return out;
}

PacfRestricted scale_hom(const PacfRestricted& w, const Rational& lambda) {
  if (lambda <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "scale_hom needs lambda > 0");
  PacfRestricted out{w.n, w.pieces, scale(w.domain, lambda)};
  for (auto& p : out.pieces) p.a = scale(p.a, Rational(1) / lambda);
  out.pieces = sorted_unique(std::move(out.pieces));
  return out;
}

PacfFinite u_zero(const PacfFinite& u) {
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "u_zero of a non-coercive function");
  PacfRestricted w = conjugate(u);
  PacfRestricted zero{u.n, {{zero_vec(u.n), Rational(0)}}, w.domain};
  return conjugate(max_fn(w, zero));
}

double epiconv_distance(const PacfFinite& u, const PacfFinite& v, const std::vector<Rational>& t_grid) {
  const Rational floor = std::max(min_value(u).value, min_value(v).value);
  double worst = 0;
  for (const auto& t : t_grid) {
    if (t < floor) {
      throw FuncvalError(ErrorCode::GridBelowMin, "level " + to_string(t) + " is below the larger minimum " + to_string(floor));
    }
    auto su = sublevel(u, t);
    auto sv = sublevel(v, t);
    worst = std::max(worst, hausdorff_distance(*su, *sv));
  }
  return worst;
}

}  // namespace funcval
