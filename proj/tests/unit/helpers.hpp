#pragma once

#include "funcval/convexfn.hpp"
#include "funcval/rational.hpp"

#include <initializer_list>
#include <random>
#include <string>

namespace testing_helpers {

inline funcval::Rational q(const std::string& s) { return funcval::parse_rational(s); }

inline funcval::Vec v(std::initializer_list<const char*> xs) {
  funcval::Vec out;
  for (const char* x : xs) out.push_back(funcval::parse_rational(x));
  return out;
}

using namespace funcval;

inline funcval::Rational rand_rational(std::mt19937_64& rng, long range, long den) {
  return Rational(static_cast<long>(rng() % (2 * range + 1)) - range) / Rational(den);
}

// Random coercive function: slopes include a small simplex around the origin
// so that 0 is interior to their hull.
inline funcval::PacfFinite random_pacf(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  std::vector<AffinePiece> pieces;
  Vec centre(n);
  for (auto& c : centre) c = rand_rational(rng, 2, 4);
  for (std::size_t i = 0; i <= n; ++i) {
    Vec a = i < n ? scale(unit_vec(n, i), Rational(2)) : Vec(n, Rational(-2));
    pieces.push_back({add(a, centre), rand_rational(rng, 6, 2)});
  }
  for (std::size_t k = 0; k < extra; ++k) {
    Vec a(n);
    for (auto& x : a) x = rand_rational(rng, 6, 2);
    pieces.push_back({a, rand_rational(rng, 6, 2)});
  }
  return PacfFinite{n, pieces};
}

}  // namespace testing_helpers
