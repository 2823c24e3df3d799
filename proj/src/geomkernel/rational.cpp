#include "funcval/rational.hpp"

#include "funcval/errors.hpp"

#include <cctype>
#include <sstream>

namespace funcval {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::OriginNotInDomain: return "OriginNotInDomain";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::NotCoercive: return "NotCoercive";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::DerivativeUnavailable: return "DerivativeUnavailable";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NonConvexMin: return "NonConvexMin";
    case ErrorCode::GridBelowMin: return "GridBelowMin";
    case ErrorCode::ComplexityLimit: return "ComplexityLimit";
    case ErrorCode::UnsupportedInput: return "UnsupportedInput";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw FuncvalError(ErrorCode::DimensionMismatch, "dot product of vectors of different length");
  }
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw FuncvalError(ErrorCode::DimensionMismatch, "vector sum");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw FuncvalError(ErrorCode::DimensionMismatch, "vector difference");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec scale(const Vec& v, const Rational& s) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] * s;
  return r;
}

Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n, Rational(0));
  v.at(i) = 1;
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Rational squared_norm(const Vec& v) { return dot(v, v); }

Rational primitive_scale(const Vec& v) {
  Integer den_lcm = 1;
  for (const auto& x : v) {
    if (!x.is_zero()) den_lcm = boost::multiprecision::lcm(den_lcm, Integer(denominator(x)));
  }
  Integer num_gcd = 0;
  for (const auto& x : v) {
    if (x.is_zero()) continue;
    Integer scaled = Integer(numerator(x)) * (den_lcm / Integer(denominator(x)));
    num_gcd = boost::multiprecision::gcd(num_gcd, scaled);
  }
  if (num_gcd == 0) return Rational(1);
  if (num_gcd < 0) num_gcd = -num_gcd;
  return Rational(den_lcm) / Rational(num_gcd);
}

Vec primitive_integer(const Vec& v) { return scale(v, primitive_scale(v)); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational from_double(double d) { return Rational(d); }

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].str();
  }
  os << ')';
  return os.str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return FuncvalError(ErrorCode::ParseError, "not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto dotpos = s.find('.');
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) throw bad();
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw bad();
    }
  };
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Integer d(den);
    if (d == 0) throw bad();
    if (num[0] == '+') num = num.substr(1);
    return Rational(Integer(num)) / Rational(d);
  }
  if (dotpos != std::string::npos) {
    std::string whole = s.substr(0, dotpos);
    std::string frac = s.substr(dotpos + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    check_int(whole);
    check_int(frac);
    Rational denom = pow(Rational(10), static_cast<long>(frac.size()));
    Rational value = Rational(Integer(whole)) + Rational(Integer(frac)) / denom;
    return negative ? Rational(-value) : value;
  }
  check_int(s);
  if (s[0] == '+') s = s.substr(1);
  return Rational(Integer(s));
}

Rational factorial(std::size_t k) {
  Rational f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<long>(i);
  return f;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational r = 1;
  for (long i = 0; i < exponent; ++i) r *= base;
  return r;
}

}  // namespace funcval
