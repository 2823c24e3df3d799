#include "doctest.h"
#include "helpers.hpp"

#include "funcval/errors.hpp"
#include "funcval/linalg.hpp"
#include "funcval/valuations.hpp"

#include <cmath>

using namespace funcval;
using testing_helpers::q;
using testing_helpers::random_pacf;
using testing_helpers::v;

namespace {

const ZetaSpec kExp0 = ZetaSpec::exp_decay(1, ZetaRole::Zeta0);
const ZetaSpec kExp1 = ZetaSpec::exp_decay(1, ZetaRole::Zeta1);
const ZetaSpec kBump2 = ZetaSpec::bump(0, 1, 1, ZetaRole::Zeta2);

ValuationSpec full_spec(std::size_t n) { return ValuationSpec{n, kExp0, kExp1, kBump2}; }

bool throws_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const FuncvalError& e) {
    return e.code() == code;
  }
  return false;
}

PolytopeV cube2() { return standard_body(BodyKind::Cube, 2); }
PolytopeV cross2() { return standard_body(BodyKind::Cross, 2); }
PolytopeV tdelta2() { return standard_body(BodyKind::TDelta, 2, {q("1/4")}); }

}  // namespace

TEST_CASE("z0 reads the weight at the minimum") {
  auto u = cone_function(cube2(), Rational(3));
  CHECK(z0(u, kExp0) == doctest::Approx(std::exp(-3.0)));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto w = random_pacf(rng, 2, 3);
    auto phi = random_unimodular(2, rng(), 4).matrix;
    CHECK(min_value(compose_linear(w, phi)).value == min_value(w).value);
    CHECK(min_value(scale_hom(w, q("5/2"))).value == min_value(w).value);
    CHECK(z0(compose_linear(w, phi), kExp0) == z0(w, kExp0));
  }
}

TEST_CASE("z1 of cone functions is psi1 times the volume") {
  CHECK(z1(cone_function(cube2()), kExp1).value == doctest::Approx(8.0).epsilon(1e-10));
  for (const auto& body : {cube2(), tdelta2(), cross2()}) {
    for (int t : {0, 1}) {
      double expected = psi1(kExp1, 2, t).value * to_double(volume(body));
      CHECK(z1(cone_function(body, Rational(t)), kExp1).value == doctest::Approx(expected).epsilon(1e-9));
    }
  }
  auto poly = ZetaSpec::poly_cutoff(2, 4, ZetaRole::Zeta1);
  auto bump = ZetaSpec::bump(1, 1, 2, ZetaRole::Zeta1);
  for (const auto& z : {poly, bump}) {
    double expected = psi1(z, 2, 0.5).value * to_double(volume(tdelta2()));
    CHECK(z1(cone_function(tdelta2(), q("1/2")), z).value == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("z1 counts a flat bottom as an atom") {
  // u = max(x - 1, -x - 1, 0): int e^{-u} = 2 + 2
  auto u = make_finite(1, {{v({"1"}), q("-1")}, {v({"-1"}), q("-1")}, {v({"0"}), q("0")}});
  CHECK(z1(u, kExp1).value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("z1 against a direct Riemann-sum oracle on a random function") {
  std::mt19937_64 rng(3);
  auto u = random_pacf(rng, 2, 3);
  // Midpoint rule on a large square; e^{-u} decays at least like e^{-c|x|}.
  const double half = 20.0;
  const int cells = 600;
  const double h = 2 * half / cells;
  double sum = 0;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      double x = -half + (i + 0.5) * h, y = -half + (j + 0.5) * h;
      double val = -std::numeric_limits<double>::infinity();
      for (const auto& p : u.pieces) val = std::max(val, to_double(p.a[0]) * x + to_double(p.a[1]) * y + to_double(p.b));
      sum += std::exp(-val) * h * h;
    }
  }
  CHECK(z1(u, kExp1).value == doctest::Approx(sum).epsilon(1e-3));
}

TEST_CASE("z1 is homogeneous of degree n") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 2u, 3u}) {
    auto u = random_pacf(rng, n, 2);
    std::vector<double> lambdas{1, 2, 4}, values;
    for (double lam : lambdas) values.push_back(z1(scale_hom(u, from_double(lam)), kExp1).value);
    CHECK(loglog_slope(lambdas, values) == doctest::Approx(static_cast<double>(n)).epsilon(1e-3));
  }
}

TEST_CASE("z2 is the Monge-Ampere sum") {
  CHECK(z2(cone_function(cube2()), kBump2) == doctest::Approx(2.0));
  CHECK(*z2_exact(cone_function(cube2()), kBump2) == 2);
  auto below = ZetaSpec::bump(-5, 1, 1, ZetaRole::Zeta2);
  std::mt19937_64 rng(9);
  auto u = random_pacf(rng, 2, 2);
  auto shifted = add_constant(u, Rational(10) - min_value(u).value);
  CHECK(z2(shifted, below) == 0.0);
  auto l1 = make_finite(2, {{v({"1", "1"}), 0}, {v({"1", "-1"}), 0}, {v({"-1", "1"}), 0}, {v({"-1", "-1"}), 0}});
  auto half = ZetaSpec::bump(0, 2, 3, ZetaRole::Zeta2);
  CHECK(*z2_exact(l1, half) == 12);
  CHECK(!z2_exact(l1, ZetaSpec::exp_decay(1, ZetaRole::Zeta2)).has_value());
  // Total Monge-Ampere mass equals the volume of the slope hull.
  Rational mass = 0;
  for (const auto& [z, m] : monge_ampere_measure(u)) mass += m;
  std::vector<Vec> slopes;
  for (const auto& p : u.pieces) slopes.push_back(p.a);
  CHECK(mass == volume(hull(slopes)));
}

TEST_CASE("z_total of a cone function follows the growth formula") {
  auto spec = full_spec(2);
  for (const auto& body : {cube2(), tdelta2(), cross2()}) {
    for (double t : {0.0, 0.5}) {
      auto val = z_total(cone_function(body, from_double(t)), spec);
      double expected = std::exp(-t) + psi1(kExp1, 2, t).value * to_double(volume(body)) +
                        zeta_eval(kBump2, t) * to_double(volume(polar_body(body)));
      CHECK(val.total() == doctest::Approx(expected).epsilon(1e-9));
    }
  }
  CHECK(z_total(cone_function(cube2()), ValuationSpec{2, {}, {}, {}}).total() == 0.0);
  CHECK(throws_code(ErrorCode::DimensionMismatch, [&] { z_total(cone_function(cube2()), full_spec(3)); }));
}

TEST_CASE("hessian_dual and dual_min_val") {
  auto zero_on_cross = make_restricted({{v({"0", "0"}), 0}}, cross2());
  CHECK(hessian_dual(zero_on_cross, kBump2) == doctest::Approx(2.0));
  CHECK(dual_min_val(zero_on_cross, kExp0) == 1.0);
  for (const auto& body : {cube2(), tdelta2()}) {
    auto u = cone_function(body, q("1/2"));
    CHECK(*hessian_dual_exact(conjugate(u), kBump2) == *z2_exact(u, kBump2));
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_pacf(rng, 2, 3);
    auto w = conjugate(u);
    CHECK(hessian_dual_measure(w) == monge_ampere_measure(u));
    CHECK(dual_min_val(w, kExp0) == doctest::Approx(z0(u, kExp0)));
    auto phi = random_unimodular(2, rng(), 3).matrix;
    CHECK(dual_min_val(compose_linear(w, phi), kExp0) == dual_min_val(w, kExp0));
    auto big = ZetaSpec::poly_cutoff(100, 1, ZetaRole::Zeta2);
    std::vector<double> lambdas{1, 2, 4}, values;
    for (double lam : lambdas) values.push_back(hessian_dual(scale_hom(w, from_double(lam)), big));
    CHECK(loglog_slope(lambdas, values) == doctest::Approx(2.0).epsilon(1e-3));
  }
  auto off = make_restricted({{v({"0", "0"}), 0}}, translate(cross2(), v({"3", "0"})));
  CHECK(throws_code(ErrorCode::OriginNotInterior, [&] { hessian_dual(off, kBump2); }));
  CHECK(throws_code(ErrorCode::OriginNotInDomain, [&] { dual_min_val(off, kBump2); }));
}

TEST_CASE("dual valuations") {
  ValuationSpec z1_only{2, {}, kExp1, {}};
  // The indicator of K^* is the conjugate of l_K.
  auto body = tdelta2();
  auto indicator = to_restricted(SpecialFn{SpecialKind::IndicatorPlus, polar_body(body), 0});
  CHECK(z_dual(indicator, z1_only).z1 == doctest::Approx(z1(cone_function(body), kExp1).value).epsilon(1e-12));
  // The support function h_K has conjugate I_K: value zeta(0) V(K).
  auto support = to_finite(SpecialFn{SpecialKind::SupportMinus, body, 0});
  CHECK(z_dual(support, z1_only).z1 == doctest::Approx(to_double(volume(body))).epsilon(1e-10));
  std::mt19937_64 rng(8);
  auto u = random_pacf(rng, 2, 2);
  std::vector<double> lambdas{1, 2, 4}, values;
  for (double lam : lambdas) values.push_back(z_dual(scale_hom(u, from_double(lam)), z1_only).z1);
  CHECK(loglog_slope(lambdas, values) == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(throws_code(ErrorCode::UnsupportedInput, [&] { z_dual(u, full_spec(2)); }));
}

TEST_CASE("growth extraction recovers the weights") {
  auto spec = full_spec(2);
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    auto g = growth_extract(spec, cube2(), t, {1, 2, 0.5});
    CHECK(g.psi0 == doctest::Approx(std::exp(-t)).epsilon(1e-5));
    CHECK(g.psi1 == doctest::Approx(psi1(kExp1, 2, t).value).epsilon(1e-5));
    CHECK(std::abs(g.psi2 - zeta_eval(kBump2, t)) <= 1e-5);
    CHECK(g.condition < 1e8);
  }
  CHECK(throws_code(ErrorCode::ParameterOutOfRange, [&] { growth_extract(spec, cube2(), 0, {1, 2, 2}); }));
  CHECK(throws_code(ErrorCode::IllConditioned, [&] { growth_extract(spec, cube2(), 0, {1, 1 + 1e-9, 1 + 2e-9}); }));
}

TEST_CASE("c_{n,k} coefficients") {
  auto c1 = cnk_coefficients(1, q("1/4"));
  CHECK(c1 == std::vector<Rational>{q("1/2"), 1});
  CHECK(cnk_coefficients(2, q("1/2")) == std::vector<Rational>{1, 2, 1});
  for (std::size_t n = 1; n <= 6; ++n) {
    Rational delta = q("2/7");
    auto c = cnk_coefficients(n, delta);
    Rational binom = 1;
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(c[k] == binom * pow(2 * delta, static_cast<long>(n - k)));
      binom = binom * static_cast<long>(n - k) / static_cast<long>(k + 1);
    }
    CHECK(c[n] == 1);
  }
}

TEST_CASE("box indicator identity") {
  auto r = box_identity_check(2, 1, q("1/2"), 0, kExp1, 1e-6);
  CHECK(r.pass);
  CHECK(r.lhs == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(r.rhs == doctest::Approx(4.0).epsilon(1e-12));
  auto r1 = box_identity_check(1, 1, q("1/4"), 0, kExp1, 1e-6);
  CHECK(r1.lhs == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(r1.rhs == doctest::Approx(1.5).epsilon(1e-12));
  // A vanishing box leaves (2 delta)^n psi1(t) / n!.
  auto tiny = box_identity_check(2, q("1/1000"), q("1/2"), 1, kExp1, 1e-6);
  CHECK(tiny.pass);
  CHECK(tiny.lhs == doctest::Approx(psi1(kExp1, 2, 1).value / 2).epsilon(1e-2));
}

TEST_CASE("valuation identity on lattice pairs") {
  auto spec = full_spec(2);
  std::mt19937_64 rng(17);
  auto u = random_pacf(rng, 2, 3);
  auto same = valuation_identity_check(spec, u, add_constant(u, q("3/2")), 1e-6);
  CHECK(same.pass);
  // l_{K union L} = min(l_K, l_L) for a body split by a slab.
  auto p = tdelta2();
  auto k = *intersect_halfspace(p, Halfspace{v({"1", "0"}), q("1/4")});
  auto l = *intersect_halfspace(p, Halfspace{v({"-1", "0"}), q("1/4")});
  auto split = valuation_identity_check(spec, cone_function(k), cone_function(l), 1e-6);
  CHECK(split.pass);
  CHECK(split.z0_exact);
  CHECK(split.z2_exact);
  auto a = make_finite(1, {{v({"1"}), 0}, {v({"-1"}), 0}});
  auto b = translate_fn(a, v({"1"}));
  CHECK(throws_code(ErrorCode::NonConvexMin, [&] { valuation_identity_check(ValuationSpec{1, {}, {}, {}}, a, b, 1e-6); }));
}

TEST_CASE("invariance under unimodular maps and translations") {
  auto spec = full_spec(2);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    auto u = random_pacf(rng, 2, 3);
    auto base = z_total(u, spec);
    auto phi = random_unimodular(2, rng(), 4).matrix;
    auto mapped = z_total(compose_linear(u, phi), spec);
    auto moved = z_total(translate_fn(u, v({"3/2", "-7/3"})), spec);
    CHECK(mapped.z0 == base.z0);
    CHECK(*z2_exact(compose_linear(u, phi), kBump2) == *z2_exact(u, kBump2));
    CHECK(*z2_exact(translate_fn(u, v({"3/2", "-7/3"})), kBump2) == *z2_exact(u, kBump2));
    CHECK(mapped.z1 == doctest::Approx(base.z1).epsilon(1e-8));
    CHECK(moved.z1 == doctest::Approx(base.z1).epsilon(1e-8));
  }
}

TEST_CASE("synthesis chain on a polygonal disc") {
  auto disc = standard_body(BodyKind::Ball, 2, {64});
  auto spec = full_spec(2);
  for (int lam : {1, 2}) {
    for (int t : {0, 1}) {
      auto r = theorem_synthesis(spec, disc, Rational(lam), Rational(t), 1e-4);
      CHECK(r.lines.size() == 7);
      CHECK(r.pass);
    }
  }
}

TEST_CASE("specification validation") {
  CHECK_NOTHROW(validate(full_spec(2)));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange, [] { validate(ValuationSpec{2, kExp1, {}, {}}); }));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange,
                    [] { validate(ValuationSpec{2, {}, {}, ZetaSpec::exp_decay(1, ZetaRole::Zeta2)}); }));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange,
                    [] { validate(ValuationSpec{3, {}, ZetaSpec::poly_cutoff(1, 3, ZetaRole::Zeta1), {}}); }));
}
