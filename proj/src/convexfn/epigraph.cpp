#include "funcval/epigraph.hpp"

#include "funcval/cone.hpp"
#include "funcval/errors.hpp"

#include <algorithm>
#include <set>

namespace funcval {

namespace {

using Bits = boost::dynamic_bitset<>;

// Point on an edge crossing height t.
Vec crossing(const EpigraphSkeleton& s, bool to_ray, std::size_t p, std::size_t q, const Rational& t) {
  const Vec& xp = s.vertex_x[p];
  const Rational& zp = s.vertex_z[p];
  if (to_ray) return add(xp, scale(s.ray_x[q], (t - zp) / s.ray_z[q]));
  const Vec& xq = s.vertex_x[q];
  return add(xp, scale(sub(xq, xp), (t - zp) / (s.vertex_z[q] - zp)));
}

struct Crossing {
  bool to_ray;
  std::size_t p, q;
  Bits tight;
};

Rational simplex_det(const std::vector<Vec>& pts, const std::vector<std::size_t>& s) {
  Matrix m;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) m.push_back(sub(pts[s[i]], pts[s.back()]));
  return determinant(std::move(m));
}

}  // namespace

EpigraphSkeleton EpigraphSkeleton::build(std::size_t n, const std::vector<AffinePiece>& pieces,
                                         const std::vector<Halfspace>& domain) {
  EpigraphSkeleton s;
  s.n = n;
  s.piece_rows = pieces.size();
  s.domain_rows = domain.size();
  Matrix rows;
  for (const auto& p : pieces) {
    if (p.a.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "piece slope length");
    Vec r = p.a;
    r.push_back(Rational(-1));
    r.push_back(p.b);
    rows.push_back(std::move(r));
  }
  for (const auto& h : domain) {
    if (h.normal.size() != n) throw FuncvalError(ErrorCode::DimensionMismatch, "domain normal length");
    Vec r = h.normal;
    r.push_back(Rational(0));
    r.push_back(-h.offset);
    rows.push_back(std::move(r));
  }
  Vec last(n + 2, Rational(0));
  last[n + 1] = -1;
  rows.push_back(std::move(last));

  ConeGenerators cone = extreme_rays(rows, n + 2);
  std::vector<std::size_t> index(cone.rays.size());
  std::vector<bool> is_vertex(cone.rays.size());
  for (std::size_t r = 0; r < cone.rays.size(); ++r) {
    const Vec& g = cone.rays[r];
    Vec x(g.begin(), g.begin() + static_cast<long>(n));
    Bits tight = cone.tight[r];
    tight.resize(rows.size() - 1);  // drop the s >= 0 row
    if (g[n + 1].is_zero()) {
      is_vertex[r] = false;
      index[r] = s.ray_x.size();
      s.ray_x.push_back(std::move(x));
      s.ray_z.push_back(g[n]);
      s.ray_tight.push_back(std::move(tight));
    } else {
      is_vertex[r] = true;
      index[r] = s.vertex_x.size();
      Rational inv = Rational(1) / g[n + 1];
      s.vertex_x.push_back(scale(x, inv));
      s.vertex_z.push_back(g[n] * inv);
      s.vertex_tight.push_back(std::move(tight));
    }
  }
  for (auto [i, j] : cone.adjacent_pairs()) {
    if (is_vertex[i] && is_vertex[j]) {
      s.vertex_edges.emplace_back(index[i], index[j]);
    } else if (is_vertex[i]) {
      s.ray_edges.emplace_back(index[i], index[j]);
    } else if (is_vertex[j]) {
      s.ray_edges.emplace_back(index[j], index[i]);
    }
  }
  s.generator_rank = rank(s.tight_generators(kAllRows));
  return s;
}

EpigraphSkeleton EpigraphSkeleton::of(const PacfFinite& u) { return build(u.n, u.pieces); }

EpigraphSkeleton EpigraphSkeleton::of(const PacfRestricted& w) {
  return build(w.n, w.pieces, w.domain.halfspaces());
}

Matrix EpigraphSkeleton::tight_generators(std::size_t row) const {
  Matrix gens;
  for (std::size_t v = 0; v < vertex_x.size(); ++v) {
    if (row != kAllRows && !vertex_tight[v][row]) continue;
    Vec g = vertex_x[v];
    g.push_back(vertex_z[v]);
    g.push_back(Rational(1));
    gens.push_back(std::move(g));
  }
  for (std::size_t r = 0; r < ray_x.size(); ++r) {
    if (row != kAllRows && !ray_tight[r][row]) continue;
    Vec g = ray_x[r];
    g.push_back(ray_z[r]);
    g.push_back(Rational(0));
    gens.push_back(std::move(g));
  }
  return gens;
}

bool EpigraphSkeleton::row_is_facet(std::size_t row) const {
  Matrix gens = tight_generators(row);
  return !gens.empty() && rank(std::move(gens)) + 1 == generator_rank;
}

bool EpigraphSkeleton::coercive() const {
  for (std::size_t r = 0; r < ray_x.size(); ++r) {
    if (ray_z[r] <= 0) return false;
  }
  return !vertex_x.empty();
}

SublevelProfile SublevelProfile::build(const EpigraphSkeleton& s) {
  if (!s.coercive()) throw FuncvalError(ErrorCode::NotCoercive, "sublevel sets are unbounded");
  const std::size_t n = s.n;
  SublevelProfile prof;
  prof.n = n;
  std::set<Rational> heights(s.vertex_z.begin(), s.vertex_z.end());
  prof.breaks.assign(heights.begin(), heights.end());
  const std::size_t rows = s.piece_rows + s.domain_rows;

  for (std::size_t k = 0; k < prof.breaks.size(); ++k) {
    const Rational lo = prof.breaks[k];
    const bool last = k + 1 == prof.breaks.size();
    const Rational hi = last ? lo + 2 : prof.breaks[k + 1];
    const Rational mid = (lo + hi) / 2;

    std::vector<Crossing> cross;
    for (auto [p, q] : s.vertex_edges) {
      if (last) break;
      Rational zp = s.vertex_z[p], zq = s.vertex_z[q];
      if (zp > zq) std::swap(p, q), std::swap(zp, zq);
      if (zp <= lo && zq >= hi) cross.push_back({false, p, q, s.vertex_tight[p] & s.vertex_tight[q]});
    }
    for (auto [v, r] : s.ray_edges) {
      if (s.vertex_z[v] <= lo) cross.push_back({true, v, r, s.vertex_tight[v] & s.ray_tight[r]});
    }

    std::vector<Rational> poly(n + 1, Rational(0));
    std::vector<Vec> pts;
    for (const auto& c : cross) pts.push_back(crossing(s, c.to_ray, c.p, c.q, mid));
    if (pts.size() >= n + 1 && affine_rank(pts) == static_cast<long>(n)) {
      std::vector<Bits> facets;
      for (std::size_t row = 0; row < rows; ++row) {
        Bits f(cross.size());
        for (std::size_t i = 0; i < cross.size(); ++i)
          if (cross[i].tight[row]) f.set(i);
        if (f.count() >= n) facets.push_back(std::move(f));
      }
      auto simplices = triangulate(pts, facets);
      std::vector<int> sign;
      for (const auto& sx : simplices) sign.push_back(simplex_det(pts, sx).sign());

      // The signed determinant sum is a polynomial of degree <= n in t on
      // this interval; recover it from n + 1 exact samples at tau = 0..n.
      Matrix vander;
      Vec values;
      for (std::size_t j = 0; j <= n; ++j) {
        Rational t = lo + Rational(static_cast<long>(j));
        std::vector<Vec> at;
        for (const auto& c : cross) at.push_back(crossing(s, c.to_ray, c.p, c.q, t));
        Rational sum = 0;
        for (std::size_t i = 0; i < simplices.size(); ++i) sum += sign[i] * simplex_det(at, simplices[i]);
        values.push_back(sum / factorial(n));
        Vec row(n + 1);
        for (std::size_t e = 0; e <= n; ++e) row[e] = pow(Rational(static_cast<long>(j)), static_cast<long>(e));
        vander.push_back(std::move(row));
      }
      poly = *solve(vander, values);
    }
    prof.coeffs.push_back(std::move(poly));
  }
  return prof;
}

Rational SublevelProfile::operator()(const Rational& t) const {
  if (breaks.empty() || t < breaks.front()) return Rational(0);
  std::size_t k = static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), t) - breaks.begin()) - 1;
  Rational tau = t - breaks[k];
  Rational v = 0;
  for (std::size_t j = coeffs[k].size(); j-- > 0;) v = v * tau + coeffs[k][j];
  return v;
}

double SublevelProfile::operator()(double t) const {
  if (breaks.empty() || t < to_double(breaks.front())) return 0.0;
  std::size_t k = 0;
  while (k + 1 < breaks.size() && to_double(breaks[k + 1]) <= t) ++k;
  double tau = t - to_double(breaks[k]);
  double v = 0;
  for (std::size_t j = coeffs[k].size(); j-- > 0;) v = v * tau + to_double(coeffs[k][j]);
  return v;
}

double SublevelProfile::derivative(std::size_t k, double t) const {
  double tau = t - to_double(breaks[k]);
  double v = 0;
  for (std::size_t j = coeffs[k].size(); j-- > 1;) v = v * tau + static_cast<double>(j) * to_double(coeffs[k][j]);
  return v;
}

MongeAmpereMeasure monge_ampere_measure(const PacfFinite& u) {
  auto s = EpigraphSkeleton::of(u);
  MongeAmpereMeasure mu;
  for (std::size_t v = 0; v < s.vertex_x.size(); ++v) {
    std::vector<Vec> slopes;
    for (std::size_t i = 0; i < s.piece_rows; ++i)
      if (s.vertex_tight[v][i]) slopes.push_back(u.pieces[i].a);
    Rational vol = volume(PolytopeV::hull(slopes));
    if (!vol.is_zero()) mu[s.vertex_z[v]] += vol;
  }
  return mu;
}

MongeAmpereMeasure hessian_dual_measure(const PacfRestricted& w) {
  auto s = EpigraphSkeleton::of(w);
  MongeAmpereMeasure mu;
  for (std::size_t j = 0; j < s.piece_rows; ++j) {
    std::vector<Vec> pts;
    for (std::size_t v = 0; v < s.vertex_x.size(); ++v)
      if (s.vertex_tight[v][j]) pts.push_back(s.vertex_x[v]);
    if (pts.empty()) continue;
    Rational vol = volume(PolytopeV::hull(pts));
    if (vol.is_zero()) continue;
    mu[-w.pieces[j].b] += vol;
  }
  return mu;
}

}  // namespace funcval
