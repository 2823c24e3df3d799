#include "funcval/valuations.hpp"

#include "funcval/errors.hpp"
#include "funcval/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace funcval {

namespace {

double weight(const std::optional<ZetaSpec>& z, double t) { return z ? zeta_eval(*z, t) : 0.0; }

void require_role(const ZetaSpec& z, ZetaRole role, const char* name) {
  if (z.role != role) throw FuncvalError(ErrorCode::ParameterOutOfRange, std::string(name) + " has the wrong role");
}

bool same_measure(MongeAmpereMeasure a, MongeAmpereMeasure b) {
  std::erase_if(a, [](const auto& kv) { return kv.second.is_zero(); });
  std::erase_if(b, [](const auto& kv) { return kv.second.is_zero(); });
  return a == b;
}

MongeAmpereMeasure operator+(MongeAmpereMeasure a, const MongeAmpereMeasure& b) {
  for (const auto& [z, m] : b) a[z] += m;
  return a;
}

std::optional<Rational> weighted_sum(const MongeAmpereMeasure& mu, const ZetaSpec& zeta) {
  Rational total = 0;
  for (const auto& [z, mass] : mu) {
    auto w = zeta_exact(zeta, z);
    if (!w) return std::nullopt;
    total += *w * mass;
  }
  return total;
}

double weighted_sum_double(const MongeAmpereMeasure& mu, const ZetaSpec& zeta) {
  double total = 0;
  for (const auto& [z, mass] : mu) total += zeta_eval(zeta, to_double(z)) * to_double(mass);
  return total;
}

}  // namespace

void validate(const ValuationSpec& spec) {
  if (spec.n < 1) throw FuncvalError(ErrorCode::ParameterOutOfRange, "valuation dimension must be >= 1");
  const int n = static_cast<int>(spec.n);
  if (spec.zeta0) {
    require_role(*spec.zeta0, ZetaRole::Zeta0, "zeta0");
    validate(*spec.zeta0);
  }
  if (spec.zeta1) {
    require_role(*spec.zeta1, ZetaRole::Zeta1, "zeta1");
    validate(*spec.zeta1, n);
  }
  if (spec.zeta2) {
    require_role(*spec.zeta2, ZetaRole::Zeta2, "zeta2");
    validate(*spec.zeta2);
  }
}

std::optional<Rational> zeta_exact(const ZetaSpec& spec, const Rational& t) {
  if (const auto* b = std::get_if<Bump>(&spec.kind)) {
    Rational c = from_double(b->c), w = from_double(b->w), h = from_double(b->h);
    Rational d = t - c;
    if (d < 0) d = -d;
    Rational v = 1 - d / w;
    return v > 0 ? h * v : Rational(0);
  }
  if (const auto* p = std::get_if<PolyCutoff>(&spec.kind)) {
    Rational T = from_double(p->T);
    return t >= T ? Rational(0) : pow(T - t, p->p);
  }
  return std::nullopt;
}

double z0(const PacfFinite& u, const ZetaSpec& zeta) { return zeta_eval(zeta, to_double(min_value(u).value)); }
double z0(const PacfRestricted& w, const ZetaSpec& zeta) { return zeta_eval(zeta, to_double(min_value(w).value)); }

Estimate z1(const SublevelProfile& profile, const ZetaSpec& zeta, const QuadConfig& cfg) {
  Estimate total;
  if (profile.breaks.empty()) return total;
  const double lo = support_begin(zeta), hi = support_end(zeta);
  // A flat bottom carries an atom of mass V(min u).
  double start = to_double(profile.breaks.front());
  total.value = zeta_eval(zeta, start) * to_double(profile.coeffs.front().front());
  const std::vector<double> splits = kinks(zeta);
  for (std::size_t k = 0; k < profile.breaks.size(); ++k) {
    double a = std::max(to_double(profile.breaks[k]), lo);
    double b = k + 1 < profile.breaks.size() ? to_double(profile.breaks[k + 1]) : std::numeric_limits<double>::infinity();
    b = std::min(b, hi);
    if (!(b > a)) continue;
    auto f = [&](double t) { return zeta_eval(zeta, t) * profile.derivative(k, t); };
    // Pieces are judged together: a tiny panel may carry a large relative error.
    Estimate piece = integrate_panels(f, a, b, splits, 0.01 * cfg.rel_tol);
    total.value += piece.value;
    total.error += piece.error;
  }
  if (!(total.error <= cfg.rel_tol * std::abs(total.value) + cfg.abs_tol)) {
    throw FuncvalError(ErrorCode::QuadratureNotConverged, "layer-cake integral did not reach the tolerance");
  }
  return total;
}

Estimate z1(const PacfFinite& u, const ZetaSpec& zeta, const QuadConfig& cfg) {
  return z1(SublevelProfile::build(EpigraphSkeleton::of(u)), zeta, cfg);
}

Estimate z1(const PacfRestricted& w, const ZetaSpec& zeta, const QuadConfig& cfg) {
  return z1(SublevelProfile::build(EpigraphSkeleton::of(w)), zeta, cfg);
}

double z2(const PacfFinite& u, const ZetaSpec& zeta) {
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "the Monge-Ampere sum needs a coercive function");
  return weighted_sum_double(monge_ampere_measure(u), zeta);
}

std::optional<Rational> z2_exact(const PacfFinite& u, const ZetaSpec& zeta) {
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "the Monge-Ampere sum needs a coercive function");
  return weighted_sum(monge_ampere_measure(u), zeta);
}

ValuationValue z_total(const PacfFinite& u, const ValuationSpec& spec, const QuadConfig& cfg) {
  if (u.n != spec.n) throw FuncvalError(ErrorCode::DimensionMismatch, "function and valuation dimensions differ");
  if (!is_coercive(u)) throw FuncvalError(ErrorCode::NotCoercive, "valuations are defined on coercive functions");
  ValuationValue out;
  if (spec.zeta0) out.z0 = z0(u, *spec.zeta0);
  if (spec.zeta1) {
    Estimate e = z1(u, *spec.zeta1, cfg);
    out.z1 = e.value;
    out.z1_error = e.error;
  }
  if (spec.zeta2) out.z2 = z2(u, *spec.zeta2);
  return out;
}

double hessian_dual(const PacfRestricted& w, const ZetaSpec& zeta) {
  if (!origin_interior(w.domain)) throw FuncvalError(ErrorCode::OriginNotInterior, "origin not interior to the domain");
  return weighted_sum_double(hessian_dual_measure(w), zeta);
}

std::optional<Rational> hessian_dual_exact(const PacfRestricted& w, const ZetaSpec& zeta) {
  if (!origin_interior(w.domain)) throw FuncvalError(ErrorCode::OriginNotInterior, "origin not interior to the domain");
  return weighted_sum(hessian_dual_measure(w), zeta);
}

double dual_min_val(const PacfRestricted& w, const ZetaSpec& zeta) {
  Extended at_origin = w(zero_vec(w.n));
  if (at_origin.infinite) throw FuncvalError(ErrorCode::OriginNotInDomain, "w(0) is infinite");
  return zeta_eval(zeta, to_double(-at_origin.value));
}

ValuationValue z_dual(const PacfRestricted& w, const ValuationSpec& spec, const QuadConfig& cfg) {
  return z_total(conjugate(w), spec, cfg);
}

ValuationValue z_dual(const PacfFinite& u, const ValuationSpec& spec, const QuadConfig& cfg) {
  if (spec.zeta2) {
    throw FuncvalError(ErrorCode::UnsupportedInput, "the polar-volume part diverges on functions with bounded domain");
  }
  PacfRestricted w = conjugate(u);
  ValuationValue out;
  if (spec.zeta0) out.z0 = z0(w, *spec.zeta0);
  if (spec.zeta1) {
    Estimate e = z1(w, *spec.zeta1, cfg);
    out.z1 = e.value;
    out.z1_error = e.error;
  }
  return out;
}

double loglog_slope(const std::vector<double>& lambdas, const std::vector<double>& values) {
  if (lambdas.size() != values.size() || lambdas.size() < 2) {
    throw FuncvalError(ErrorCode::ParameterOutOfRange, "slope fit needs at least two matching samples");
  }
  const double m = static_cast<double>(lambdas.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    double x = std::log(lambdas[i]), y = std::log(std::abs(values[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

GrowthSample growth_extract(const ValuationSpec& spec, const PolytopeV& k, double t,
                            const std::vector<double>& lambdas, const QuadConfig& cfg) {
  std::vector<double> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() < 3 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() <= 0) {
    throw FuncvalError(ErrorCode::ParameterOutOfRange, "growth fit needs at least three distinct positive scales");
  }
  if (!origin_interior(k)) throw FuncvalError(ErrorCode::OriginNotInterior, "body must contain the origin in its interior");
  const int n = static_cast<int>(spec.n);
  const Rational shift = from_double(t);
  Eigen::MatrixXd a(lambdas.size(), 3);
  Eigen::VectorXd rhs(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    double lam = lambdas[i];
    a(i, 0) = 1.0;
    a(i, 1) = std::pow(lam, n);
    a(i, 2) = std::pow(lam, -n);
    rhs(i) = z_total(cone_function(scale(k, from_double(lam)), shift), spec, cfg).total();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  GrowthSample out;
  out.t = t;
  out.condition = sv(0) / sv(sv.size() - 1);
  if (!(out.condition <= 1e8)) throw FuncvalError(ErrorCode::IllConditioned, "growth system condition number above 1e8");
  Eigen::VectorXd x = svd.solve(rhs);
  out.residual = (a * x - rhs).norm();
  out.psi0 = x(0);
  out.psi1 = x(1) / to_double(volume(k));
  out.psi2 = x(2) / to_double(volume(polar_body(k)));
  return out;
}

std::vector<Rational> cnk_coefficients(std::size_t n, const Rational& delta) {
  if (n < 1 || delta <= 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "need n >= 1 and delta > 0");
  std::vector<Rational> c{Rational(1)};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> next(i + 2, Rational(0));
    for (std::size_t k = 0; k <= i + 1; ++k) {
      if (k >= 1) next[k] += c[k - 1];
      if (k <= i) next[k] += 2 * delta * c[k];
    }
    c = std::move(next);
  }
  return c;
}

BoxIdentityReport box_identity_check(std::size_t n, const Rational& lambda, const Rational& delta,
                                     const Rational& t, const ZetaSpec& zeta1, double tol) {
  if (n < 1 || n > 2) throw FuncvalError(ErrorCode::ParameterOutOfRange, "box identity is checked for n in {1, 2}");
  if (!std::holds_alternative<ExpDecay>(zeta1.kind)) {
    throw FuncvalError(ErrorCode::UnsupportedInput, "box identity needs analytic derivatives of psi1");
  }
  SpecialFn indicator{SpecialKind::IndicatorPlus, standard_body(BodyKind::Box, n, {lambda}), t};
  BoxIdentityReport out;
  out.lhs = z1(reg_delta(indicator, delta), zeta1).value;
  const auto c = cnk_coefficients(n, delta);
  const double lam = to_double(lambda), tt = to_double(t);
  double sum = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const int ki = static_cast<int>(k);
    sum += to_double(c[k]) * std::pow(-lam, ki) * psi1(zeta1, static_cast<int>(n), tt, ki).value;
  }
  out.rhs = sum / to_double(factorial(n));
  out.gap = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.rhs), 1e-300);
  out.pass = out.gap <= tol;
  return out;
}

ValuationIdentityReport valuation_identity_check(const ValuationSpec& spec, const PacfFinite& u,
                                                 const PacfFinite& v, double tol) {
  auto mn = min_fn(u, v);
  if (!mn) throw FuncvalError(ErrorCode::NonConvexMin, "min(u, v) is not convex");
  PacfFinite mx = max_fn(u, v);
  ValuationIdentityReport r;
  r.u = z_total(u, spec);
  r.v = z_total(v, spec);
  r.max = z_total(mx, spec);
  r.min = z_total(*mn, spec);
  r.gap = std::abs(r.max.total() + r.min.total() - r.u.total() - r.v.total());
  r.bound = tol * (1 + std::abs(r.u.total()) + std::abs(r.v.total()));

  std::vector<Rational> lhs{min_value(mx).value, min_value(*mn).value};
  std::vector<Rational> rhs{min_value(u).value, min_value(v).value};
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  r.z0_exact = lhs == rhs;
  r.z2_exact = same_measure(monge_ampere_measure(mx) + monge_ampere_measure(*mn),
                            monge_ampere_measure(u) + monge_ampere_measure(v));
  r.pass = r.gap <= r.bound && r.z0_exact && r.z2_exact;
  return r;
}

SynthesisReport theorem_synthesis(const ValuationSpec& spec, const PolytopeV& body, const Rational& lambda,
                                  const Rational& t, double tol) {
  if (spec.n != 2 || body.dim() != 2) {
    throw FuncvalError(ErrorCode::UnsupportedInput, "the polar-angle quadrature is planar");
  }
  if (!origin_interior(body)) throw FuncvalError(ErrorCode::OriginNotInterior, "body must contain the origin");
  const int n = 2;
  const double lam = to_double(lambda), tt = to_double(t);
  const double psi0 = weight(spec.zeta0, tt);
  const double psi2 = weight(spec.zeta2, tt);
  const double psi1_t = spec.zeta1 ? psi1(*spec.zeta1, n, tt).value : 0.0;

  const PolytopeV scaled = scale(body, lambda);
  const double vol_body = to_double(volume(body));
  const double vol_scaled = to_double(volume(scaled));
  const double vol_polar_scaled = to_double(volume(polar_body(scaled)));
  const double vol_shrunk_polar = to_double(volume(scale(polar_body(body), Rational(1) / lambda)));

  // Radial moment n int_0^inf r^{n-1} zeta1(r + t) dr.
  double moment = 0;
  if (spec.zeta1) {
    const ZetaSpec& z = *spec.zeta1;
    std::vector<double> splits;
    for (double k : kinks(z)) splits.push_back(k - tt);
    double hi = std::isinf(support_end(z)) ? support_end(z) : std::max(0.0, support_end(z) - tt);
    moment = n * integrate([&](double r) { return r * zeta_eval(z, r + tt); }, 0.0, hi, splits).value;
  }

  // int_{R^2} zeta1(l_P(x) / scale + t) dx in polar coordinates; the gauge is
  // linear on each angular sector between consecutive vertices of P.
  PacfFinite gauge = cone_function(body);
  auto radial_integral = [&](double scale_factor) {
    if (!spec.zeta1) return 0.0;
    const ZetaSpec& z = *spec.zeta1;
    std::vector<std::pair<double, double>> normals;
    for (const auto& p : gauge.pieces) normals.emplace_back(to_double(p.a[0]), to_double(p.a[1]));
    auto g = [&](double th) {
      double c = std::cos(th), s = std::sin(th), best = -std::numeric_limits<double>::infinity();
      for (const auto& [a0, a1] : normals) best = std::max(best, a0 * c + a1 * s);
      return best;
    };
    std::vector<double> angles;
    for (const auto& vtx : body.vertices()) {
      double a = std::atan2(to_double(vtx[1]), to_double(vtx[0]));
      angles.push_back(a < 0 ? a + 2 * std::numbers::pi : a);
    }
    double hi_t = support_end(z);
    auto inner = [&](double th) {
      double slope = g(th) / scale_factor;
      std::vector<double> splits;
      for (double k : kinks(z))
        if (k > tt) splits.push_back((k - tt) / slope);
      double r_hi = std::isinf(hi_t) ? hi_t : std::max(0.0, (hi_t - tt) / slope);
      return integrate([&](double r) { return r * zeta_eval(z, slope * r + tt); }, 0.0, r_hi, splits, 1e-11, 1e-15).value;
    };
    return integrate(inner, 0.0, 2 * std::numbers::pi, angles, 1e-8, 1e-12).value;
  };

  SynthesisReport rep;
  PacfFinite u = cone_function(scaled, t);
  rep.lines.push_back(z_total(u, spec).total());
  rep.lines.push_back(psi0 + psi1_t * vol_scaled + psi2 * vol_polar_scaled);
  rep.lines.push_back(psi0 + std::pow(lam, n) * vol_body * psi1_t + psi2 * vol_shrunk_polar);
  rep.lines.push_back(psi0 + std::pow(lam, n) * vol_body * moment + psi2 * vol_shrunk_polar);
  rep.lines.push_back(psi0 + std::pow(lam, n) * radial_integral(1.0) + psi2 * vol_shrunk_polar);
  rep.lines.push_back(psi0 + radial_integral(lam) + psi2 * vol_shrunk_polar);
  // Last line: the three integrals read off u and its conjugate.
  double last = 0;
  if (spec.zeta0) last += z0(u, *spec.zeta0);
  if (spec.zeta1) last += z1(u, *spec.zeta1).value;
  if (spec.zeta2) last += hessian_dual(conjugate(u), *spec.zeta2);
  rep.lines.push_back(last);
  for (double x : rep.lines) rep.gap = std::max(rep.gap, std::abs(x - rep.lines.front()) / (1 + std::abs(rep.lines.front())));
  rep.pass = rep.gap <= tol;
  return rep;
}

}  // namespace funcval
