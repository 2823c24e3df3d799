#include "doctest.h"
#include "helpers.hpp"

#include "funcval/errors.hpp"
#include "funcval/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace funcval;
using testing_helpers::q;
using testing_helpers::v;

namespace {

Vec random_point(std::mt19937_64& rng, std::size_t n, long range = 10, long den = 4) {
  Vec p(n);
  for (auto& x : p) x = Rational(static_cast<long>(rng() % (2 * range + 1)) - range) / Rational(den);
  return p;
}

// A random body that contains the ball of radius 1/8 around the origin.
PolytopeV random_body(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < count; ++i) pts.push_back(random_point(rng, n));
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(scale(unit_vec(n, i), q("1/2")));
    pts.push_back(scale(unit_vec(n, i), q("-1/2")));
  }
  return hull(pts);
}

}  // namespace

TEST_CASE("hull drops interior points") {
  auto p = hull({v({"0", "0"}), v({"1", "0"}), v({"0", "1"}), v({"1/4", "1/4"})});
  CHECK(p.vertices() == std::vector<Vec>{v({"0", "0"}), v({"0", "1"}), v({"1", "0"})});
  CHECK(p.full_dimensional());
  CHECK(p.facet_count() == 3);
}

TEST_CASE("hull rejects mixed dimensions") {
  CHECK_THROWS_AS(hull({v({"0", "0"}), v({"1"})}), FuncvalError);
}

TEST_CASE("hull of random points in R^3 keeps only input points and contains all inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(random_point(rng, 3));
    auto p = hull(pts);
    for (const auto& vert : p.vertices()) CHECK(std::find(pts.begin(), pts.end(), vert) != pts.end());
    for (const auto& x : pts) CHECK(p.contains(x));
    // No vertex lies in the hull of the others.
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
      std::vector<Vec> rest = p.vertices();
      rest.erase(rest.begin() + static_cast<long>(i));
      CHECK_FALSE(hull(rest).contains(p.vertices()[i]));
    }
  }
}

TEST_CASE("lower-dimensional hulls") {
  auto seg = hull({v({"0", "0", "0"}), v({"1", "1", "1"}), v({"1/2", "1/2", "1/2"})});
  CHECK(seg.affine_dim() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(volume(seg) == 0);
  CHECK(seg.contains(v({"1/4", "1/4", "1/4"})));
  CHECK_FALSE(seg.contains(v({"1/4", "1/4", "0"})));
  auto back = to_vrep(seg.to_hrep());
  REQUIRE(back.has_value());
  CHECK(*back == seg);
}

TEST_CASE("cube round trip through halfspaces") {
  auto cube = standard_body(BodyKind::Cube, 2);
  auto h = to_hrep(cube);
  CHECK(h.halfspaces.size() == 4);
  for (const auto& hs : h.halfspaces) CHECK(hs.offset == 1);
  auto back = to_vrep(h);
  REQUIRE(back.has_value());
  CHECK(*back == cube);
}

TEST_CASE("T_delta facets") {
  auto td = standard_body(BodyKind::TDelta, 2, {q("1/2")});
  CHECK(td.vertices() == std::vector<Vec>{v({"-1/2", "-1/2"}), v({"-1/2", "3/2"}), v({"3/2", "-1/2"})});
  // x1 >= -1/2, x2 >= -1/2, x1 + x2 <= 1 with primitive integer normals
  std::vector<Halfspace> expected{{v({"-1", "0"}), q("1/2")}, {v({"0", "-1"}), q("1/2")}, {v({"1", "1"}), q("1")}};
  std::vector<Halfspace> got = td.halfspaces();
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
}

TEST_CASE("random 3-polytope round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(random_point(rng, 3));
    auto p = hull(pts);
    auto back = to_vrep(p.to_hrep());
    REQUIRE(back.has_value());
    CHECK(*back == p);
  }
}

TEST_CASE("to_vrep reports unbounded and empty inputs") {
  PolytopeH half{2, {{v({"1", "0"}), q("1")}}};
  CHECK_THROWS_AS(to_vrep(half), FuncvalError);
  PolytopeH wedge{2, {{v({"1", "0"}), q("0")}, {v({"0", "1"}), q("0")}}};
  CHECK_THROWS_AS(to_vrep(wedge), FuncvalError);
  PolytopeH empty{2, {{v({"1", "0"}), q("-1")}, {v({"-1", "0"}), q("-1")}}};
  CHECK_FALSE(to_vrep(empty).has_value());
  PolytopeH empty_box{1, {{v({"1"}), q("0")}, {v({"-1"}), q("-1")}}};
  CHECK_FALSE(to_vrep(empty_box).has_value());
}

TEST_CASE("volumes of standard bodies") {
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(volume(standard_body(BodyKind::Simplex, n)) == Rational(1) / factorial(n));
  }
  CHECK(volume(standard_body(BodyKind::Cube, 2)) == 4);
  CHECK(volume(standard_body(BodyKind::Cross, 3)) == Rational(8, 6));
  auto box = standard_body(BodyKind::Box, 3, {q("2")});
  CHECK(box.vertices().size() == 8);
  CHECK(volume(box) == 8);
  CHECK(volume(hull({v({"-2", "0"}), v({"0", "-2"}), v({"1", "1"})})) == 4);
}

TEST_CASE("polygon volume matches the shoelace formula") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(random_point(rng, 2));
    auto p = hull(pts);
    if (!p.full_dimensional()) continue;
    // Order the vertices by angle around an interior point using exact
    // cross products, then apply the shoelace formula.
    Vec c = zero_vec(2);
    for (const auto& x : p.vertices()) c = add(c, x);
    c = scale(c, Rational(1) / Rational(static_cast<long>(p.vertices().size())));
    auto verts = p.vertices();
    auto half = [&](const Vec& x) { Vec d = sub(x, c); return d[1] > 0 || (d[1] == 0 && d[0] > 0) ? 0 : 1; };
    std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
      if (half(a) != half(b)) return half(a) < half(b);
      Vec da = sub(a, c), db = sub(b, c);
      return da[0] * db[1] - da[1] * db[0] > 0;
    });
    Rational twice = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const auto& a = verts[i];
      const auto& b = verts[(i + 1) % verts.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    CHECK(volume(p) == abs(twice) / 2);
  }
}

TEST_CASE("polar bodies") {
  auto cube = standard_body(BodyKind::Cube, 2);
  CHECK(polar_body(cube) == standard_body(BodyKind::Cross, 2));
  CHECK(polar(polar(cube)) == cube);
  auto td = standard_body(BodyKind::TDelta, 2, {q("1/2")});
  auto tdp = polar_body(td);
  CHECK(tdp == hull({v({"-2", "0"}), v({"0", "-2"}), v({"1", "1"})}));
  CHECK(volume(tdp) == 4);
  CHECK_THROWS_AS(polar_body(standard_body(BodyKind::Simplex, 2)), FuncvalError);
}

TEST_CASE("bipolar identity and polar homogeneity on random bodies") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    auto p = random_body(rng, n, 6);
    CHECK(polar_body(polar_body(p)) == p);
    Rational lambda = Rational(static_cast<long>(rng() % 4) + 1, 2);
    CHECK(volume(polar_body(scale(p, lambda))) == volume(polar_body(p)) / pow(lambda, static_cast<long>(n)));
  }
}

TEST_CASE("intersections and unions") {
  auto td = standard_body(BodyKind::TDelta, 2, {q("1/2")});
  auto cut = intersect_halfspace(td, {v({"1", "0"}), q("1/2")});
  REQUIRE(cut.has_value());
  CHECK(cut->vertices().size() == 4);
  CHECK(origin_interior(*cut));
  auto loose = intersect_halfspace(td, {v({"1", "0"}), q("10")});
  REQUIRE(loose.has_value());
  CHECK(*loose == td);
  CHECK_FALSE(intersect_halfspace(td, {v({"1", "0"}), q("-1")}).has_value());
  auto k = hull({v({"0", "0"}), v({"2", "0"}), v({"0", "3"})});
  CHECK(volume(conv_union(standard_body(BodyKind::Cross, 2), k)) == 6);
}

TEST_CASE("conv union volume formula") {
  CHECK(conv_union_volume_check(v({"2", "3"}), q("1")).pass());
  CHECK(conv_union_volume_check(v({"1/3", "5", "1/2"}), q("2/3")).pass());
}

TEST_CASE("Hausdorff distances") {
  auto cube = standard_body(BodyKind::Cube, 2);
  CHECK(hausdorff_distance(cube, cube) == 0.0);
  CHECK(hausdorff_distance(cube, scale(cube, Rational(2))) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    auto p = random_body(rng, n, 5);
    Vec x = random_point(rng, n);
    double expected = std::sqrt(to_double(squared_norm(x)));
    CHECK(hausdorff_distance(p, translate(p, x)) == doctest::Approx(expected).epsilon(1e-12));
  }
  // Distance to a segment in R^3 from a point off its line.
  auto seg = hull({v({"0", "0", "0"}), v({"2", "0", "0"})});
  CHECK(squared_distance(v({"1", "1", "1"}), seg) == 2);
  CHECK(squared_distance(v({"3", "0", "0"}), seg) == 1);
}

TEST_CASE("unimodular maps") {
  auto id = random_unimodular(3, 1, 0);
  CHECK(id.matrix == identity_matrix(3));
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    auto phi = random_unimodular(n, 1000 + static_cast<std::uint64_t>(trial), 6);
    CHECK(determinant(phi.matrix) == 1);
    auto p = random_body(rng, n, 6);
    CHECK(volume(apply_map(phi.matrix, p)) == volume(p));
  }
}

TEST_CASE("standard bodies reject invalid parameters") {
  CHECK_THROWS_AS(standard_body(BodyKind::TDelta, 2, {q("1")}), FuncvalError);
  CHECK_THROWS_AS(standard_body(BodyKind::TDelta, 3, {q("1")}), FuncvalError);
  CHECK_THROWS_AS(standard_body(BodyKind::Box, 2, {q("0")}), FuncvalError);
  CHECK(standard_body(BodyKind::Cross, 3).vertices().size() == 6);
  auto ball = standard_body(BodyKind::Ball, 2, {Rational(64)});
  CHECK(ball.vertices().size() == 64);
  CHECK(std::abs(to_double(volume(ball)) - 64 * std::sin(2 * M_PI / 64) / 2) < 1e-4);
}

TEST_CASE("T_delta splitting lemma") {
  auto rep = lemma_t_delta_suite(2, q("1/2"), q("1/2"), q("1"), q("2"));
  CHECK(rep.union_identity);
  CHECK(rep.intersection_identity);
  CHECK(rep.increment == 2);
  CHECK(rep.closed_form == 2);
  auto rep3 = lemma_t_delta_suite(3, q("1/4"), q("1/3"), q("1"), q("2"));
  CHECK(rep3.all());
  auto degenerate = lemma_t_delta_suite(2, q("1/4"), q("2/3"), q("2"), q("2"));
  CHECK(degenerate.all());
  CHECK_THROWS_AS(lemma_t_delta_suite(2, q("1/2"), q("1"), q("1"), q("2")), FuncvalError);
}
