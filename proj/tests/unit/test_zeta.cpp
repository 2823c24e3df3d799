#include "funcval/errors.hpp"
#include "funcval/zeta.hpp"

#include <doctest.h>

#include <cmath>

using namespace funcval;

namespace {

bool throws_code(ErrorCode code, const std::function<void()>& f) {
  try {
    f();
  } catch (const FuncvalError& e) {
    return e.code() == code;
  }
  return false;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("weights evaluate to their closed forms") {
  CHECK(zeta_eval(ZetaSpec::exp_decay(1, ZetaRole::Zeta1), 0, 3) == doctest::Approx(-1.0));
  auto bump = ZetaSpec::bump(0, 1, 1, ZetaRole::Zeta2);
  CHECK(zeta_eval(bump, 1) == 0.0);
  CHECK(zeta_eval(bump, -1) == 0.0);
  CHECK(zeta_eval(bump, 0) == 1.0);
  CHECK(zeta_eval(bump, 0.25) == doctest::Approx(0.75));
  CHECK(zeta_eval(ZetaSpec::poly_cutoff(1, 3, ZetaRole::Zeta1), 0) == 1.0);
  CHECK(zeta_eval(ZetaSpec::poly_cutoff(1, 3, ZetaRole::Zeta1), 2) == 0.0);
  CHECK(zeta_eval(ZetaSpec::poly_cutoff(2, 3, ZetaRole::Zeta1), 0, 2) == doctest::Approx(12.0));
}

TEST_CASE("derivatives of the weights match central differences") {
  const double h = 1e-4;
  for (const auto& spec : {ZetaSpec::exp_decay(1.5, ZetaRole::Zeta1), ZetaSpec::poly_cutoff(2, 4, ZetaRole::Zeta1)}) {
    for (double t : {0.1, 0.7, 1.3}) {
      for (int k = 0; k < 3; ++k) {
        double fd = (zeta_eval(spec, t + h, k) - zeta_eval(spec, t - h, k)) / (2 * h);
        CHECK(zeta_eval(spec, t, k + 1) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("invalid parameters and derivative requests are rejected") {
  CHECK(throws_code(ErrorCode::DerivativeUnavailable,
                    [] { zeta_eval(ZetaSpec::bump(0, 1, 1, ZetaRole::Zeta2), 0.5, 1); }));
  CHECK(throws_code(ErrorCode::DerivativeUnavailable,
                    [] { zeta_eval(ZetaSpec::poly_cutoff(1, 3, ZetaRole::Zeta1), 0.5, 4); }));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange, [] { validate(ZetaSpec::exp_decay(0, ZetaRole::Zeta1)); }));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange, [] { validate(ZetaSpec::exp_decay(1, ZetaRole::Zeta2)); }));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange, [] { validate(ZetaSpec::bump(0, 0, 1, ZetaRole::Zeta2)); }));
  CHECK(throws_code(ErrorCode::ParameterOutOfRange, [] { validate(ZetaSpec::poly_cutoff(1, 2, ZetaRole::Zeta1), 2); }));
  CHECK_NOTHROW(validate(ZetaSpec::poly_cutoff(1, 3, ZetaRole::Zeta2), 2));
}

TEST_CASE("psi1 of the exponential weight is n! alpha^-n e^{-alpha t}") {
  CHECK(psi1(ZetaSpec::exp_decay(1, ZetaRole::Zeta1), 2, 0).value == doctest::Approx(2.0));
  auto spec = ZetaSpec::exp_decay(0.5, ZetaRole::Zeta1);
  for (int n = 1; n <= 3; ++n) {
    for (double t : {0.0, 0.5, 2.0}) {
      for (int k = 0; k <= n; ++k) {
        Estimate closed = psi1(spec, n, t, k);
        Estimate quad = psi1_quadrature(spec, n, t, k);
        CHECK(quad.value == doctest::Approx(closed.value).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("psi1 quadrature forms agree for the cutoff and tent weights") {
  auto poly = ZetaSpec::poly_cutoff(1.5, 4, ZetaRole::Zeta1);
  // n int_0^{T-t} r^{n-1} (T-t-r)^p dr = n B(n, p+1) (T-t)^{n+p}
  for (double t : {0.0, 0.5, 1.0}) {
    double s = 1.5 - t;
    double exact = 2 * factorial(1) * factorial(4) / factorial(6) * std::pow(s, 6);
    CHECK(psi1(poly, 2, t).value == doctest::Approx(exact).epsilon(1e-10));
    for (int k = 0; k <= 2; ++k) {
      CHECK(psi1_quadrature(poly, 2, t, k).value == doctest::Approx(psi1(poly, 2, t, k).value).epsilon(1e-9));
    }
  }
  auto bump = ZetaSpec::bump(1, 1, 2, ZetaRole::Zeta1);
  // n = 1: psi1(t) = int_t^inf zeta = area of the tent to the right of t
  CHECK(psi1(bump, 1, 0).value == doctest::Approx(2.0));
  CHECK(psi1(bump, 1, 1).value == doctest::Approx(1.0));
  CHECK(psi1(bump, 3, 2.5).value == 0.0);
  CHECK(psi1(bump, 2, 3).value == 0.0);
}

TEST_CASE("the n-th derivative of psi1 recovers the weight") {
  for (const auto& spec : {ZetaSpec::exp_decay(1, ZetaRole::Zeta1), ZetaSpec::exp_decay(2.5, ZetaRole::Zeta1),
                           ZetaSpec::poly_cutoff(2, 4, ZetaRole::Zeta1)}) {
    for (int n = 1; n <= 3; ++n) {
      for (double t : {0.0, 0.3, 1.1, 1.9}) {
        double sign = n % 2 == 0 ? 1.0 : -1.0;
        double via_quad = sign * psi1_quadrature(spec, n, t, n).value / factorial(n);
        CHECK(std::abs(via_quad - zeta_eval(spec, t)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("psi1 decays monotonically to zero") {
  for (const auto& spec : {ZetaSpec::exp_decay(1, ZetaRole::Zeta1), ZetaSpec::bump(3, 4, 1, ZetaRole::Zeta1),
                           ZetaSpec::poly_cutoff(12, 4, ZetaRole::Zeta1)}) {
    double a = psi1(spec, 2, 5).value, b = psi1(spec, 2, 10).value, c = psi1(spec, 2, 20).value;
    CHECK(a > b);
    CHECK(b >= c);
    CHECK(c < 1e-7);
  }
}

TEST_CASE("moment reconstruction converges under radius doubling") {
  for (const auto& spec : {ZetaSpec::exp_decay(1, ZetaRole::Zeta1), ZetaSpec::poly_cutoff(6, 4, ZetaRole::Zeta1)}) {
    for (int n = 1; n <= 3; ++n) {
      double prev = std::abs(moment_reconstruction(spec, n, 0.5, 4).value - zeta_eval(spec, 0.5));
      for (double R : {8.0, 16.0, 32.0, 64.0}) {
        double err = std::abs(moment_reconstruction(spec, n, 0.5, R).value - zeta_eval(spec, 0.5));
        CHECK(err <= 0.5 * prev + 1e-12 * zeta_eval(spec, 0.5));
        prev = err;
      }
      CHECK(prev < 1e-9 * zeta_eval(spec, 0.5));
    }
  }
}

TEST_CASE("integrate handles splits and infinite ranges") {
  Estimate e = integrate([](double x) { return std::exp(-x); }, 0, std::numeric_limits<double>::infinity());
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  Estimate a = integrate([](double x) { return std::abs(x - 0.3); }, 0, 1, {0.3});
  CHECK(a.value == doctest::Approx(0.29).epsilon(1e-12));
}
