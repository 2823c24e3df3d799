#include "funcval/zeta.hpp"

#include "funcval/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace funcval {

namespace {

double falling_factorial(int n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(n - i);
  return r;
}

double factorial_d(int n) { return falling_factorial(n, n); }

void require_order(int n, int k) {
  if (n < 1) throw FuncvalError(ErrorCode::ParameterOutOfRange, "dimension must be >= 1");
  if (k < 0 || k > n) throw FuncvalError(ErrorCode::ParameterOutOfRange, "derivative order must lie in [0, n]");
}

// Splits for r in [0, inf) where r + t crosses a kink of the weight.
std::vector<double> shifted_kinks(const ZetaSpec& spec, double t) {
  std::vector<double> out;
  for (double k : kinks(spec)) {
    if (k - t > 0) out.push_back(k - t);
  }
  return out;
}

double upper_limit(const ZetaSpec& spec, double t) {
  double end = support_end(spec);
  return std::isinf(end) ? end : std::max(0.0, end - t);
}

}  // namespace

ZetaSpec ZetaSpec::exp_decay(double alpha, ZetaRole role) { return ZetaSpec{ExpDecay{alpha}, role}; }
ZetaSpec ZetaSpec::bump(double c, double w, double h, ZetaRole role) { return ZetaSpec{Bump{c, w, h}, role}; }
ZetaSpec ZetaSpec::poly_cutoff(double T, int p, ZetaRole role) { return ZetaSpec{PolyCutoff{T, p}, role}; }

void validate(const ZetaSpec& spec) {
  auto bad = [](const std::string& what) { return FuncvalError(ErrorCode::ParameterOutOfRange, what); };
  if (const auto* e = std::get_if<ExpDecay>(&spec.kind)) {
    if (!(e->alpha > 0)) throw bad("ExpDecay needs alpha > 0");
    if (spec.role == ZetaRole::Zeta2) throw bad("zeta2 must vanish above some T; ExpDecay does not");
  } else if (const auto* b = std::get_if<Bump>(&spec.kind)) {
    if (!(b->w > 0)) throw bad("Bump needs w > 0");
    if (!(b->h >= 0)) throw bad("Bump needs h >= 0");
  } else if (const auto* p = std::get_if<PolyCutoff>(&spec.kind)) {
    if (p->p < 1) throw bad("PolyCutoff needs p >= 1");
  }
}

void validate(const ZetaSpec& spec, int n) {
  validate(spec);
  if (const auto* p = std::get_if<PolyCutoff>(&spec.kind)) {
    if (p->p < n + 1) throw FuncvalError(ErrorCode::ParameterOutOfRange, "PolyCutoff needs p >= n + 1");
  }
}

std::string describe(const ZetaSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  if (const auto* e = std::get_if<ExpDecay>(&spec.kind)) os << "exp(alpha=" << e->alpha << ")";
  if (const auto* b = std::get_if<Bump>(&spec.kind)) os << "bump(c=" << b->c << ",w=" << b->w << ",h=" << b->h << ")";
  if (const auto* p = std::get_if<PolyCutoff>(&spec.kind)) os << "poly(T=" << p->T << ",p=" << p->p << ")";
  return os.str();
}

double zeta_eval(const ZetaSpec& spec, double t, int k) {
  if (k < 0) throw FuncvalError(ErrorCode::ParameterOutOfRange, "negative derivative order");
  if (const auto* e = std::get_if<ExpDecay>(&spec.kind)) {
    return std::pow(-e->alpha, k) * std::exp(-e->alpha * t);
  }
  if (const auto* b = std::get_if<Bump>(&spec.kind)) {
    if (k > 0) throw FuncvalError(ErrorCode::DerivativeUnavailable, "the tent weight is not differentiable");
    return b->h * std::max(0.0, 1.0 - std::abs(t - b->c) / b->w);
  }
  const auto& p = std::get<PolyCutoff>(spec.kind);
  if (k > p.p) throw FuncvalError(ErrorCode::DerivativeUnavailable, "derivative order exceeds the cutoff power");
  if (t >= p.T) return 0.0;
  double sign = k % 2 == 0 ? 1.0 : -1.0;
  return sign * falling_factorial(p.p, k) * std::pow(p.T - t, p.p - k);
}

std::vector<double> kinks(const ZetaSpec& spec) {
  if (const auto* b = std::get_if<Bump>(&spec.kind)) return {b->c - b->w, b->c, b->c + b->w};
  if (const auto* p = std::get_if<PolyCutoff>(&spec.kind)) return {p->T};
  return {};
}

double support_end(const ZetaSpec& spec) {
  if (const auto* b = std::get_if<Bump>(&spec.kind)) return b->c + b->w;
  if (const auto* p = std::get_if<PolyCutoff>(&spec.kind)) return p->T;
  return std::numeric_limits<double>::infinity();
}

double support_begin(const ZetaSpec& spec) {
  if (const auto* b = std::get_if<Bump>(&spec.kind)) return b->c - b->w;
  return -std::numeric_limits<double>::infinity();
}

Estimate integrate_panels(const std::function<double(double)>& f, double a, double b, const std::vector<double>& splits,
                          double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> pts{a};
  std::vector<double> inner = splits;
  std::sort(inner.begin(), inner.end());
  for (double s : inner) {
    if (s > pts.back() && s < b) pts.push_back(s);
  }
  pts.push_back(b);
  Estimate total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    double err = 0.0;
    double val = gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 15, rel_tol, &err);
    total.value += val;
    total.error += err;
  }
  return total;
}

Estimate integrate(const std::function<double(double)>& f, double a, double b, const std::vector<double>& splits,
                   double rel_tol, double abs_tol) {
  Estimate total = integrate_panels(f, a, b, splits, rel_tol);
  if (!(total.error <= rel_tol * std::abs(total.value) + abs_tol)) {
    std::ostringstream os;
    os << "error estimate " << total.error << " on value " << total.value;
    throw FuncvalError(ErrorCode::QuadratureNotConverged, os.str());
  }
  return total;
}

Estimate psi1(const ZetaSpec& spec, int n, double t, int k) {
  require_order(n, k);
  validate(spec, n);
  if (const auto* e = std::get_if<ExpDecay>(&spec.kind)) {
    // n int_0^inf r^{n-1} e^{-alpha (r+t)} dr = n! alpha^{-n} e^{-alpha t}
    double base = factorial_d(n) * std::pow(e->alpha, -n) * std::exp(-e->alpha * t);
    return {std::pow(-e->alpha, k) * base, 0.0};
  }
  // Integrated-by-parts form, valid without derivatives of the weight:
  // psi1^{(k)}(t) = n (-1)^k (n-1)!/(n-1-k)! int_0^inf r^{n-1-k} zeta(r+t) dr.
  double sign = k % 2 == 0 ? 1.0 : -1.0;
  if (k == n) return {sign * factorial_d(n) * zeta_eval(spec, t), 0.0};
  const int power = n - 1 - k;
  auto f = [&](double r) { return std::pow(r, power) * zeta_eval(spec, r + t); };
  Estimate est = integrate(f, 0.0, upper_limit(spec, t), shifted_kinks(spec, t));
  double c = static_cast<double>(n) * sign * falling_factorial(n - 1, k);
  return {c * est.value, std::abs(c) * est.error};
}

Estimate psi1_quadrature(const ZetaSpec& spec, int n, double t, int k) {
  require_order(n, k);
  if (std::holds_alternative<Bump>(spec.kind)) {
    if (k == n) {
      throw FuncvalError(ErrorCode::DerivativeUnavailable, "the n-th derivative of psi1 needs zeta itself for a tent");
    }
    double sign = k % 2 == 0 ? 1.0 : -1.0;
    const int power = n - 1 - k;
    auto f = [&](double r) { return std::pow(r, power) * zeta_eval(spec, r + t); };
    Estimate est = integrate(f, 0.0, upper_limit(spec, t), shifted_kinks(spec, t));
    double c = static_cast<double>(n) * sign * falling_factorial(n - 1, k);
    return {c * est.value, std::abs(c) * est.error};
  }
  auto f = [&](double r) { return std::pow(r, n - 1) * zeta_eval(spec, r + t, k); };
  Estimate est = integrate(f, 0.0, upper_limit(spec, t), shifted_kinks(spec, t));
  return {n * est.value, n * est.error};
}

Estimate moment_reconstruction(const ZetaSpec& spec, int n, double t, double R) {
  require_order(n, n);
  double sign = n % 2 == 0 ? 1.0 : -1.0;
  double c = sign / factorial_d(n - 1);
  auto f = [&](double r) { return std::pow(r, n - 1) * zeta_eval(spec, r + t, n); };
  double hi = std::min(R, upper_limit(spec, t));
  Estimate est = integrate(f, 0.0, hi, shifted_kinks(spec, t));
  return {c * est.value, std::abs(c) * est.error};
}

}  // namespace funcval
