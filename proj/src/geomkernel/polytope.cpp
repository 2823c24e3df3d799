#include "funcval/polytope.hpp"

#include "funcval/cone.hpp"
#include "funcval/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace funcval {

namespace {

using Bits = boost::dynamic_bitset<>;

void require_same_dim(const std::vector<Vec>& points) {
  if (points.empty()) throw FuncvalError(ErrorCode::EmptyResult, "hull of an empty point set");
  const std::size_t n = points[0].size();
  if (n == 0) throw FuncvalError(ErrorCode::DimensionMismatch, "points must have dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "hull of points of mixed dimension");
  }
}

struct RawFacet {
  Halfspace h;
  Bits incidence;  // over the input points
};

// Facets of the hull of points that affinely span R^d.
std::vector<RawFacet> full_dim_facets(const std::vector<Vec>& pts) {
  const std::size_t d = pts[0].size();
  Matrix rows;
  rows.reserve(pts.size());
  for (const auto& p : pts) {
    Vec r = p;
    r.push_back(Rational(-1));
    rows.push_back(std::move(r));
  }
  ConeGenerators cone = extreme_rays(rows, d + 1);
  std::vector<RawFacet> facets;
  for (std::size_t r = 0; r < cone.rays.size(); ++r) {
    Vec a(cone.rays[r].begin(), cone.rays[r].begin() + static_cast<long>(d));
    if (is_zero(a)) continue;
    facets.push_back({normalized(Halfspace{a, cone.rays[r][d]}), cone.tight[r]});
  }
  return facets;
}

Vec restrict_to(const Vec& v, const std::vector<std::size_t>& cols) {
  Vec r;
  r.reserve(cols.size());
  for (auto c : cols) r.push_back(v[c]);
  return r;
}

std::vector<Vec> points_of(const std::vector<Vec>& pts, const Bits& set) {
  std::vector<Vec> out;
  for (auto i = set.find_first(); i != Bits::npos; i = set.find_next(i)) out.push_back(pts[i]);
  return out;
}

}  // namespace

bool Halfspace::operator<(const Halfspace& o) const {
  if (normal != o.normal) return normal < o.normal;
  return offset < o.offset;
}

Halfspace normalized(const Halfspace& h) {
  Rational s = primitive_scale(h.normal);
  return Halfspace{scale(h.normal, s), h.offset * s};
}

bool PolytopeH::contains(const Vec& x) const {
  for (const auto& h : halfspaces) {
    if (dot(h.normal, x) > h.offset) return false;
  }
  return true;
}

bool PolytopeV::contains(const Vec& x) const {
  for (const auto& h : halfspaces_) {
    if (dot(h.normal, x) > h.offset) return false;
  }
  return true;
}

PolytopeV PolytopeV::hull(const std::vector<Vec>& input) {
  require_same_dim(input);
  std::vector<Vec> pts = input;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  PolytopeV out;
  out.n_ = pts[0].size();
  const std::size_t n = out.n_;

  if (pts.size() == 1) {
    out.affine_dim_ = 0;
    out.vertices_ = pts;
    for (std::size_t i = 0; i < n; ++i) {
      out.halfspaces_.push_back({unit_vec(n, i), pts[0][i]});
      out.halfspaces_.push_back({scale(unit_vec(n, i), Rational(-1)), -pts[0][i]});
    }
    std::sort(out.halfspaces_.begin(), out.halfspaces_.end());
    return out;
  }

  Matrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  auto chart = pivot_columns(diffs);
  const std::size_t d = chart.size();
  out.affine_dim_ = d;

  std::vector<RawFacet> facets;
  if (d == n) {
    facets = full_dim_facets(pts);
  } else {
    std::vector<Vec> local;
    for (const auto& p : pts) local.push_back(restrict_to(p, chart));
    for (auto& f : full_dim_facets(local)) {
      Vec lifted(n, Rational(0));
      for (std::size_t k = 0; k < d; ++k) lifted[chart[k]] = f.h.normal[k];
      f.h.normal = std::move(lifted);
      facets.push_back(std::move(f));
    }
  }

  // A point is a vertex iff the normals of the facets through it have rank d.
  std::vector<std::size_t> new_index(pts.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Matrix normals;
    for (const auto& f : facets) {
      if (f.incidence[i]) normals.push_back(f.h.normal);
    }
    if (normals.size() >= d && rank(normals) == d) {
      new_index[i] = out.vertices_.size();
      out.vertices_.push_back(pts[i]);
    }
  }

  std::sort(facets.begin(), facets.end(),
            [](const RawFacet& a, const RawFacet& b) { return a.h < b.h; });
  for (const auto& f : facets) {
    Bits inc(out.vertices_.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (f.incidence[i] && new_index[i] != static_cast<std::size_t>(-1)) inc.set(new_index[i]);
    }
    out.halfspaces_.push_back(f.h);
    out.facet_vertices_.push_back(std::move(inc));
  }

  if (d < n) {
    std::vector<Halfspace> eqs;
    for (const auto& w : nullspace(diffs, n)) {
      Vec pw = primitive_integer(w);
      Rational c = dot(pw, pts[0]);
      eqs.push_back({pw, c});
      eqs.push_back({scale(pw, Rational(-1)), -c});
    }
    std::sort(eqs.begin(), eqs.end());
    out.halfspaces_.insert(out.halfspaces_.end(), eqs.begin(), eqs.end());
  }
  return out;
}

PolytopeV hull(const std::vector<Vec>& points) { return PolytopeV::hull(points); }

PolytopeH to_hrep(const PolytopeV& p) { return p.to_hrep(); }

namespace {

// Vertices of a pointed H-polyhedron (rank of normals == n), plus a flag
// telling whether it has recession directions.
struct PointedEnumeration {
  std::vector<Vec> vertices;
  bool has_rays = false;
};

PointedEnumeration enumerate_pointed(const Matrix& a, const Vec& b) {
  const std::size_t n = a[0].size();
  Matrix rows;
  rows.reserve(a.size() + 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vec r = a[i];
    r.push_back(-b[i]);
    rows.push_back(std::move(r));
  }
  Vec s(n + 1, Rational(0));
  s[n] = -1;
  rows.push_back(std::move(s));
  ConeGenerators cone = extreme_rays(rows, n + 1);
  PointedEnumeration out;
  for (const auto& ray : cone.rays) {
    if (ray[n].is_zero()) {
      out.has_rays = true;
      continue;
    }
    Vec x(ray.begin(), ray.begin() + static_cast<long>(n));
    out.vertices.push_back(scale(x, Rational(1) / ray[n]));
  }
  return out;
}

}  // namespace

std::optional<PolytopeV> to_vrep(const PolytopeH& h) {
  const std::size_t n = h.n;
  if (h.halfspaces.empty()) throw FuncvalError(ErrorCode::Unbounded, "no halfspaces");
  Matrix a;
  Vec b;
  for (const auto& hs : h.halfspaces) {
    if (hs.normal.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "halfspace normal length");
    a.push_back(hs.normal);
    b.push_back(hs.offset);
  }
  auto basis = independent_rows(a);
  if (basis.size() < n) {
    // The set contains a line whenever it is nonempty; decide emptiness in
    // the row space of the normals.
    if (basis.empty()) {
      for (const auto& off : b)
        if (off < 0) return std::nullopt;
      throw FuncvalError(ErrorCode::Unbounded, "halfspaces do not bound the set");
    }
    Matrix bt;
    for (auto i : basis) bt.push_back(a[i]);
    Matrix reduced = multiply(a, transpose(bt));
    auto e = enumerate_pointed(reduced, b);
    if (e.vertices.empty()) return std::nullopt;
    throw FuncvalError(ErrorCode::Unbounded, "halfspaces do not bound the set");
  }
  auto e = enumerate_pointed(a, b);
  if (e.vertices.empty()) return std::nullopt;
  if (e.has_rays) throw FuncvalError(ErrorCode::Unbounded, "halfspaces do not bound the set");
  return PolytopeV::hull(e.vertices);
}

PolytopeH canonical(const PolytopeH& h) {
  auto v = to_vrep(h);
  if (!v) throw FuncvalError(ErrorCode::EmptyResult, "empty intersection of halfspaces");
  return v->to_hrep();
}

std::vector<std::vector<std::size_t>> triangulate(const std::vector<Vec>& points,
                                                  const std::vector<Bits>& facets) {
  struct Rec {
    const std::vector<Vec>& pts;
    const std::vector<Bits>& facets;

    std::vector<std::vector<std::size_t>> run(const Bits& face, std::size_t d) {
      const std::size_t v0 = face.find_first();
      if (d == 0) return {{v0}};
      std::set<Bits> subfaces;
      for (const auto& f : facets) {
        Bits sub = face & f;
        if (sub.none() || sub[v0] || sub == face) continue;
        if (subfaces.count(sub)) continue;
        if (affine_rank(points_of(pts, sub)) != static_cast<long>(d) - 1) continue;
        subfaces.insert(sub);
      }
      std::vector<std::vector<std::size_t>> out;
      for (const auto& sub : subfaces) {
        for (auto simplex : run(sub, d - 1)) {
          simplex.push_back(v0);
          out.push_back(std::move(simplex));
        }
      }
      return out;
    }
  };
  if (points.empty()) return {};
  Bits all(points.size());
  all.set();
  Rec rec{points, facets};
  return rec.run(all, points[0].size());
}

namespace {

Rational simplex_volume_times_factorial(const std::vector<Vec>& pts, const std::vector<std::size_t>& s) {
  Matrix m;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) m.push_back(sub(pts[s[i]], pts[s.back()]));
  return abs(determinant(std::move(m)));
}

}  // namespace

Rational volume(const PolytopeV& p) {
  if (!p.full_dimensional()) return Rational(0);
  std::vector<Bits> facets;
  for (std::size_t i = 0; i < p.facet_count(); ++i) facets.push_back(p.facet_vertices(i));
  Rational total = 0;
  for (const auto& s : triangulate(p.vertices(), facets)) {
    total += simplex_volume_times_factorial(p.vertices(), s);
  }
  return total / factorial(p.dim());
}

Rational volume(const PolytopeH& p) {
  auto v = to_vrep(p);
  return v ? volume(*v) : Rational(0);
}

bool origin_interior(const PolytopeV& p) {
  if (!p.full_dimensional()) return false;
  for (const auto& h : p.halfspaces()) {
    if (h.offset <= 0) return false;
  }
  return true;
}

PolytopeH polar(const PolytopeV& p) {
  if (!origin_interior(p)) throw FuncvalError(ErrorCode::OriginNotInterior, "polar needs the origin in the interior");
  PolytopeH out{p.dim(), {}};
  for (const auto& v : p.vertices()) out.halfspaces.push_back(normalized(Halfspace{v, Rational(1)}));
  std::sort(out.halfspaces.begin(), out.halfspaces.end());
  return out;
}

PolytopeV polar(const PolytopeH& h) {
  std::vector<Vec> pts;
  for (const auto& hs : h.halfspaces) {
    if (hs.offset <= 0) throw FuncvalError(ErrorCode::OriginNotInterior, "polar needs the origin in the interior");
    pts.push_back(scale(hs.normal, Rational(1) / hs.offset));
  }
  if (pts.empty()) throw FuncvalError(ErrorCode::Unbounded, "polar of R^n");
  return PolytopeV::hull(pts);
}

PolytopeV polar_body(const PolytopeV& p) {
  if (!origin_interior(p)) throw FuncvalError(ErrorCode::OriginNotInterior, "polar needs the origin in the interior");
  std::vector<Vec> pts;
  for (const auto& h : p.halfspaces()) pts.push_back(scale(h.normal, Rational(1) / h.offset));
  return PolytopeV::hull(pts);
}

std::optional<PolytopeV> intersect(const PolytopeV& p, const PolytopeV& q) {
  if (p.dim() != q.dim()) throw FuncvalError(ErrorCode::DimensionMismatch, "intersect");
  PolytopeH h = p.to_hrep();
  h.halfspaces.insert(h.halfspaces.end(), q.halfspaces().begin(), q.halfspaces().end());
  return to_vrep(h);
}

std::optional<PolytopeV> intersect_halfspace(const PolytopeV& p, const Halfspace& hs) {
  if (hs.normal.size() != p.dim()) throw FuncvalError(ErrorCode::DimensionMismatch, "intersect_halfspace");
  PolytopeH h = p.to_hrep();
  h.halfspaces.push_back(hs);
  return to_vrep(h);
}

PolytopeV conv_union(const PolytopeV& p, const PolytopeV& q) {
  if (p.dim() != q.dim()) throw FuncvalError(ErrorCode::DimensionMismatch, "conv_union");
  std::vector<Vec> pts = p.vertices();
  pts.insert(pts.end(), q.vertices().begin(), q.vertices().end());
  return PolytopeV::hull(pts);
}

Rational squared_distance(const Vec& x, const PolytopeV& p) {
  if (x.size() != p.dim()) throw FuncvalError(ErrorCode::DimensionMismatch, "distance");
  const auto& verts = p.vertices();
  // Every face is an intersection of facets; the whole polytope is added
  // explicitly since it is not one.
  std::set<Bits> faces;
  std::vector<Bits> frontier;
  Bits all(verts.size());
  all.set();
  faces.insert(all);
  for (std::size_t i = 0; i < p.facet_count(); ++i) {
    if (faces.insert(p.facet_vertices(i)).second) frontier.push_back(p.facet_vertices(i));
  }
  while (!frontier.empty()) {
    Bits f = frontier.back();
    frontier.pop_back();
    for (std::size_t i = 0; i < p.facet_count(); ++i) {
      Bits g = f & p.facet_vertices(i);
      if (g.none()) continue;
      if (faces.insert(g).second) frontier.push_back(g);
    }
  }

  std::optional<Rational> best;
  for (const auto& face : faces) {
    auto pts = points_of(verts, face);
    const Vec& p0 = pts[0];
    Matrix diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], p0));
    Matrix basis;
    for (auto i : independent_rows(diffs)) basis.push_back(diffs[i]);
    Vec proj = p0;
    if (!basis.empty()) {
      Matrix gram = multiply(basis, transpose(basis));
      Vec rhs = multiply(basis, sub(x, p0));
      Vec c = *solve(gram, rhs);
      for (std::size_t k = 0; k < basis.size(); ++k) proj = add(proj, scale(basis[k], c[k]));
    }
    if (!p.contains(proj)) continue;
    Rational d2 = squared_norm(sub(x, proj));
    if (!best || d2 < *best) best = d2;
  }
  return *best;
}

double distance(const Vec& x, const PolytopeV& p) { return std::sqrt(to_double(squared_distance(x, p))); }

double hausdorff_distance(const PolytopeV& p, const PolytopeV& q) {
  Rational worst = 0;
  for (const auto& v : p.vertices()) worst = std::max(worst, squared_distance(v, q));
  for (const auto& v : q.vertices()) worst = std::max(worst, squared_distance(v, p));
  return std::sqrt(to_double(worst));
}

UnimodularMap random_unimodular(std::size_t n, std::uint64_t seed, std::size_t shear_count) {
  UnimodularMap phi{identity_matrix(n)};
  if (n < 2) return phi;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < shear_count; ++s) {
    std::size_t i = rng() % n;
    std::size_t j = rng() % (n - 1);
    if (j >= i) ++j;
    long k = static_cast<long>(rng() % 5) - 2;
    // Row operation: row_i += k * row_j, i.e. left multiplication by a shear.
    for (std::size_t c = 0; c < n; ++c) phi.matrix[i][c] += Rational(k) * phi.matrix[j][c];
  }
  return phi;
}

PolytopeV apply_map(const Matrix& phi, const PolytopeV& p) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(multiply(phi, v));
  return PolytopeV::hull(pts);
}

PolytopeV translate(const PolytopeV& p, const Vec& x) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(add(v, x));
  return PolytopeV::hull(pts);
}

PolytopeV scale(const PolytopeV& p, const Rational& lambda) {
  std::vector<Vec> pts;
  for (const auto& v : p.vertices()) pts.push_back(scale(v, lambda));
  return PolytopeV::hull(pts);
}

void check_t_delta_range(std::size_t n, const Rational& delta) {
  bool ok = delta > 0;
  if (n == 2) ok = ok && delta < 1;
  if (n >= 3) ok = ok && delta * Rational(static_cast<long>(n) - 2) < 1;
  if (!ok) {
    throw FuncvalError(ErrorCode::ParameterOutOfRange,
                       "delta = " + to_string(delta) + " outside the admissible range for n = " + std::to_string(n));
  }
}

namespace {

Rational round_to_grid(double v) {
  constexpr long long kGrid = 1000000;
  return Rational(static_cast<long long>(std::llround(v * kGrid))) / Rational(kGrid);
}

}  // namespace

PolytopeV standard_body(BodyKind kind, std::size_t n, const std::vector<Rational>& params) {
  if (n == 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "dimension must be >= 1");
  auto param = [&](std::size_t i, const char* what) -> Rational {
    if (params.size() <= i) throw FuncvalError(ErrorCode::ParameterOutOfRange, std::string("missing parameter ") + what);
    return params[i];
  };
  std::vector<Vec> pts;
  switch (kind) {
    case BodyKind::Simplex:
      pts.push_back(zero_vec(n));
      for (std::size_t i = 0; i < n; ++i) pts.push_back(unit_vec(n, i));
      break;
    case BodyKind::TDelta: {
      Rational delta = param(0, "delta");
      check_t_delta_range(n, delta);
      Vec shift(n, -delta);
      pts.push_back(shift);
      for (std::size_t i = 0; i < n; ++i) pts.push_back(add(scale(unit_vec(n, i), 1 + 2 * delta), shift));
      break;
    }
    case BodyKind::Cube:
    case BodyKind::Box: {
      Rational lo = -1, hi = 1;
      if (kind == BodyKind::Box) {
        lo = 0;
        hi = param(0, "lambda");
        if (hi <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "box side must be positive");
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Vec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? hi : lo;
        pts.push_back(std::move(v));
      }
      break;
    }
    case BodyKind::Cross:
      for (std::size_t i = 0; i < n; ++i) {
        pts.push_back(unit_vec(n, i));
        pts.push_back(scale(unit_vec(n, i), Rational(-1)));
      }
      break;
    case BodyKind::Ball: {
      long k = params.empty() ? 64 : params[0].convert_to<long>();
      if (k < 4) throw FuncvalError(ErrorCode::ParameterOutOfRange, "ball approximation needs at least 4 vertices");
      const double pi = std::numbers::pi;
      if (n == 1) {
        pts = {{Rational(-1)}, {Rational(1)}};
      } else if (n == 2) {
        for (long j = 0; j < k; ++j) {
          double th = 2 * pi * static_cast<double>(j) / static_cast<double>(k);
          pts.push_back({round_to_grid(std::cos(th)), round_to_grid(std::sin(th))});
        }
      } else if (n == 3) {
        long rings = std::max(2L, k / 2);
        pts.push_back({Rational(0), Rational(0), Rational(1)});
        pts.push_back({Rational(0), Rational(0), Rational(-1)});
        for (long r = 1; r < rings; ++r) {
          double phi = pi * static_cast<double>(r) / static_cast<double>(rings);
          for (long j = 0; j < k; ++j) {
            double th = 2 * pi * static_cast<double>(j) / static_cast<double>(k);
            pts.push_back({round_to_grid(std::sin(phi) * std::cos(th)), round_to_grid(std::sin(phi) * std::sin(th)),
                           round_to_grid(std::cos(phi))});
          }
        }
      } else {
        throw FuncvalError(ErrorCode::UnsupportedInput, "ball approximation implemented for n <= 3");
      }
      break;
    }
  }
  return PolytopeV::hull(pts);
}

TDeltaLemmaReport lemma_t_delta_suite(std::size_t n, const Rational& delta, const Rational& rho,
                                      const Rational& b, const Rational& t) {
  if (n < 2) throw FuncvalError(ErrorCode::ParameterOutOfRange, "the splitting lemma needs n >= 2");
  check_t_delta_range(n, delta);
  if (!(rho > 0 && rho < 1)) throw FuncvalError(ErrorCode::ParameterOutOfRange, "rho must lie in (0,1)");
  if (!(b > 0 && t >= b)) throw FuncvalError(ErrorCode::ParameterOutOfRange, "need t >= b > 0");

  const PolytopeV td = standard_body(BodyKind::TDelta, n, {delta});
  const PolytopeV whole = scale(td, t);
  Vec x_delta(n, -delta);
  x_delta[0] = 1 + delta;
  const Vec shift = scale(x_delta, b);
  const Rational cut = b * (1 + delta) + rho * (t - b);

  TDeltaLemmaReport rep;
  auto piece = intersect_halfspace(whole, Halfspace{unit_vec(n, 0), cut});
  PolytopeV split = translate(scale(td, t - b), shift);
  auto td_cut = intersect_halfspace(td, Halfspace{unit_vec(n, 0), rho});
  if (!piece || !td_cut) return rep;

  // Both parts lie in t*T_delta and their union has its full volume; a closed
  // subset of a convex body with full measure is the whole body.
  auto common = intersect(*piece, split);
  bool inside = conv_union(*piece, whole) == whole && conv_union(split, whole) == whole;
  Rational inter_vol = common ? volume(*common) : Rational(0);
  rep.union_identity = inside && volume(*piece) + volume(split) - inter_vol == volume(whole);

  PolytopeV expected = translate(scale(*td_cut, t - b), shift);
  rep.intersection_identity = common && *common == expected;

  rep.increment = volume(polar_body(*td_cut)) - volume(polar_body(td));
  Rational nm2 = Rational(static_cast<long>(n) - 2);
  rep.closed_form = Rational(1) / (factorial(n) * pow(delta, static_cast<long>(n) - 2)) *
                    ((1 + delta) / (delta * (1 - nm2 * delta))) * (Rational(1) / rho - Rational(1) / (1 + delta));
  rep.increment_identity = rep.increment == rep.closed_form;
  return rep;
}

ConvUnionReport conv_union_volume_check(const Vec& c, const Rational& delta) {
  const std::size_t n = c.size();
  if (delta <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "delta must be positive");
  std::vector<Vec> pts{zero_vec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i] <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "coefficients must be positive");
    pts.push_back(scale(unit_vec(n, i), c[i]));
  }
  PolytopeV k = PolytopeV::hull(pts);
  PolytopeV cross = scale(standard_body(BodyKind::Cross, n), delta);
  ConvUnionReport rep;
  rep.computed = volume(conv_union(cross, k));
  rep.formula = Rational(1) / factorial(n);
  for (std::size_t i = 0; i < n; ++i) rep.formula *= std::max(c[i], delta) + delta;
  return rep;
}

}  // namespace funcval
