#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace funcval {

/// Arbitrary precision rational (GMP backed). Expression templates are off so
/// that `auto` never captures an unevaluated expression.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// A point or direction in R^n with exact coordinates.
using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& v, const Rational& s);
Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(const Vec& v);
Rational squared_norm(const Vec& v);

/// Positive multiple of `v` with coprime integer entries. Zero stays zero.
Vec primitive_integer(const Vec& v);

/// Multiplier s > 0 such that s * v is primitive integer.
Rational primitive_scale(const Vec& v);

double to_double(const Rational& r);
Rational from_double(double d);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);
std::string to_string(const Vec& v);

/// Accepts "p/q", integers and plain decimals ("-0.25", "3e-2" is rejected).
Rational parse_rational(std::string_view text);

Rational factorial(std::size_t k);
Rational pow(const Rational& base, long exponent);

}  // namespace funcval
