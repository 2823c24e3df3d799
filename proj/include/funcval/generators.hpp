#pragma once

#include "funcval/convexfn.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace funcval {

using Rng = std::mt19937_64;

/// Uniform on {-range, ..., range} / den.
Rational random_rational(Rng& rng, long range, long den);

/// A coercive function with `pieces` pieces (at least n + 1): the first n + 1
/// slopes form a simplex around a small random centre, so the origin stays
/// interior to the slope hull; the rest are random. Slopes are multiplied
/// by `slope_scale`.
PacfFinite random_coercive_pacf(Rng& rng, std::size_t n, std::size_t pieces, const Rational& slope_scale = 1);

/// A random body with the origin in its interior: a cross polytope of random
/// radius plus `extra` random points.
PolytopeV random_body(Rng& rng, std::size_t n, std::size_t extra);

enum class PairFamily { SplitCone, VerticalShift, TDeltaSplit };
std::string family_name(PairFamily f);

struct GeneratedPair {
  PairFamily family;
  PacfFinite u, v;
  PacfFinite min;  // u ^ v, convex by construction and re-checked
};

/// Draws (u, v) with a convex pointwise minimum from one of three families:
/// cone functions of a body split by an overlapping slab, vertical shifts
/// (u, u + c), and the truncated-cone pair whose minimum is l_{T_delta}.
GeneratedPair generate_pair(std::size_t n, std::uint64_t seed);
GeneratedPair generate_pair(std::size_t n, std::uint64_t seed, PairFamily family);

/// The truncated cone with epigraph epi l_{T_delta} cut by
/// x_1 <= b (1 + delta) + rho (z - b).
PacfFinite truncated_cone(std::size_t n, const Rational& delta, const Rational& rho, const Rational& b);
/// l_{T_delta}(x - b x_delta) + b with x_delta = (1 + delta, -delta, ..., -delta).
PacfFinite translated_cone(std::size_t n, const Rational& delta, const Rational& b);

}  // namespace funcval
