#pragma once

#include "funcval/convexfn.hpp"
#include "funcval/epigraph.hpp"
#include "funcval/zeta.hpp"

#include <optional>
#include <vector>

namespace funcval {

/// The weights of Z(u) = zeta0(min u) + int zeta1(u) + int_{dom u*} zeta2(grad u* . x - u*).
/// An absent weight contributes zero.
struct ValuationSpec {
  std::size_t n = 0;
  std::optional<ZetaSpec> zeta0, zeta1, zeta2;
};
/// Role and parameter checks for every present weight.
void validate(const ValuationSpec& spec);

struct QuadConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-13;
};

/// Exact value of a piecewise-polynomial weight at a rational point (the
/// weight parameters are read as exact binary fractions); nullopt for ExpDecay.
std::optional<Rational> zeta_exact(const ZetaSpec& spec, const Rational& t);

double z0(const PacfFinite& u, const ZetaSpec& zeta);
double z0(const PacfRestricted& w, const ZetaSpec& zeta);

/// Layer cake: the atom zeta(min u) V(min u) plus int zeta(t) V'(t) dt over
/// the exact piecewise-polynomial sublevel-volume profile V.
Estimate z1(const PacfFinite& u, const ZetaSpec& zeta, const QuadConfig& cfg = {});
Estimate z1(const PacfRestricted& w, const ZetaSpec& zeta, const QuadConfig& cfg = {});
Estimate z1(const SublevelProfile& profile, const ZetaSpec& zeta, const QuadConfig& cfg = {});

/// Discrete Monge-Ampere sum over the tessellation vertices of u.
double z2(const PacfFinite& u, const ZetaSpec& zeta);
/// The same sum in exact arithmetic; nullopt for weights without exact values.
std::optional<Rational> z2_exact(const PacfFinite& u, const ZetaSpec& zeta);

struct ValuationValue {
  double z0 = 0, z1 = 0, z2 = 0;
  double z1_error = 0;
  double total() const { return z0 + z1 + z2; }
};
ValuationValue z_total(const PacfFinite& u, const ValuationSpec& spec, const QuadConfig& cfg = {});

/// Sum of zeta(-b_j) times the volume of the linearity cell of piece j.
/// Throws OriginNotInterior.
double hessian_dual(const PacfRestricted& w, const ZetaSpec& zeta);
std::optional<Rational> hessian_dual_exact(const PacfRestricted& w, const ZetaSpec& zeta);
/// zeta(-w(0)). Throws OriginNotInDomain.
double dual_min_val(const PacfRestricted& w, const ZetaSpec& zeta);

/// Z^*(w) = Z(w^*).
ValuationValue z_dual(const PacfRestricted& w, const ValuationSpec& spec, const QuadConfig& cfg = {});
/// Z^*(u) = Z(u^*) for a finite u; u^* has a bounded domain, so only the
/// zeta0 and zeta1 parts are defined (a zeta2 weight is UnsupportedInput).
ValuationValue z_dual(const PacfFinite& u, const ValuationSpec& spec, const QuadConfig& cfg = {});

/// Least-squares slope of log|value| against log(lambda).
double loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& values);

struct GrowthSample {
  double t = 0;
  double psi0 = 0, psi1 = 0, psi2 = 0;
  double residual = 0;
  double condition = 0;
};
/// Fits Z(l_{lambda K} + t) = psi0 + lambda^n psi1 V(K) + lambda^-n psi2 V(K^*).
/// Throws IllConditioned (condition number above 1e8) or ParameterOutOfRange.
GrowthSample growth_extract(const ValuationSpec& spec, const PolytopeV& k, double t,
                            const std::vector<double>& lambdas, const QuadConfig& cfg = {});

/// c_{n,0..n}(delta) from c_{i+1,k} = c_{i,k-1} + 2 delta c_{i,k}, c_{i,0} = (2 delta)^i.
std::vector<Rational> cnk_coefficients(std::size_t n, const Rational& delta);

struct BoxIdentityReport {
  double lhs = 0, rhs = 0, gap = 0;
  bool pass = false;
};
/// z1(reg_delta(I_{[0,lambda]^n} + t)) against (1/n!) sum_k c_{n,k} (-lambda)^k psi1^{(k)}(t).
BoxIdentityReport box_identity_check(std::size_t n, const Rational& lambda, const Rational& delta,
                                     const Rational& t, const ZetaSpec& zeta1, double tol);

struct ValuationIdentityReport {
  ValuationValue u, v, max, min;
  double gap = 0;
  double bound = 0;
  bool z0_exact = false;  // {min(u v v), min(u ^ v)} = {min u, min v}
  bool z2_exact = false;  // Monge-Ampere measures cancel exactly
  bool pass = false;
};
/// Throws NonConvexMin when min(u, v) is not convex.
ValuationIdentityReport valuation_identity_check(const ValuationSpec& spec, const PacfFinite& u,
                                                 const PacfFinite& v, double tol);

/// The chain Z(l_{lambda P} + t) computed from growth functions, volumes,
/// the radial moment, a polar-angle quadrature, and finally the valuation
/// pipeline itself, for a planar body P standing in for the disc.
struct SynthesisReport {
  std::vector<double> lines;
  double gap = 0;  // largest deviation from the first line
  bool pass = false;
};
SynthesisReport theorem_synthesis(const ValuationSpec& spec, const PolytopeV& body, const Rational& lambda,
                                  const Rational& t, double tol);

}  // namespace funcval
