#pragma once

#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace funcval {

/// t -> exp(-alpha t)
struct ExpDecay {
  double alpha = 1.0;
};
/// Tent of height h on [c - w, c + w].
struct Bump {
  double c = 0.0, w = 1.0, h = 1.0;
};
/// t -> max(0, T - t)^p
struct PolyCutoff {
  double T = 1.0;
  int p = 3;
};

enum class ZetaRole { Zeta0, Zeta1, Zeta2 };

struct ZetaSpec {
  std::variant<ExpDecay, Bump, PolyCutoff> kind;
  ZetaRole role = ZetaRole::Zeta1;

  static ZetaSpec exp_decay(double alpha, ZetaRole role);
  static ZetaSpec bump(double c, double w, double h, ZetaRole role);
  static ZetaSpec poly_cutoff(double T, int p, ZetaRole role);
};

/// Throws ParameterOutOfRange on invalid parameters or role mismatches.
void validate(const ZetaSpec& spec);
/// Additionally requires p >= n + 1 for PolyCutoff in dimension n.
void validate(const ZetaSpec& spec, int n);
std::string describe(const ZetaSpec& spec);

/// k-th derivative of the weight at t. Throws DerivativeUnavailable.
double zeta_eval(const ZetaSpec& spec, double t, int k = 0);

/// Points where the weight or one of its derivatives is not smooth.
std::vector<double> kinks(const ZetaSpec& spec);
/// The weight vanishes on [support_end, inf); +inf for ExpDecay.
double support_end(const ZetaSpec& spec);
/// The weight vanishes on (-inf, support_begin]; -inf if it never does.
double support_begin(const ZetaSpec& spec);

/// Value with an absolute error estimate.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod on [a, b] (b may be +inf), split at the given
/// interior points. Throws QuadratureNotConverged when the error estimate
/// exceeds rel_tol * |value| + abs_tol.
Estimate integrate(const std::function<double(double)>& f, double a, double b,
                   const std::vector<double>& splits = {}, double rel_tol = 1e-10, double abs_tol = 1e-13);

/// The same panels without the convergence check, for callers that judge
/// the accumulated error of several integrals together.
Estimate integrate_panels(const std::function<double(double)>& f, double a, double b,
                          const std::vector<double>& splits, double rel_tol);

/// psi_1^{(k)}(t) for psi_1(t) = n int_0^inf r^{n-1} zeta(r + t) dr, k <= n.
/// Closed form for ExpDecay, quadrature otherwise.
Estimate psi1(const ZetaSpec& spec, int n, double t, int k = 0);
/// Always by quadrature of n int r^{n-1} zeta^{(k)}(r + t) dr; for Bump
/// (no derivatives) the k-fold integrated-by-parts form is used instead.
Estimate psi1_quadrature(const ZetaSpec& spec, int n, double t, int k = 0);

/// int_0^R r^{n-1} (-1)^n / (n-1)! zeta^{(n)}(r + t) dr, which tends to
/// zeta(t) as R grows.
Estimate moment_reconstruction(const ZetaSpec& spec, int n, double t, double R);

/// psi_0 and psi_2 coincide with zeta_0 and zeta_2.
inline double psi0(const ZetaSpec& spec, double t) { return zeta_eval(spec, t); }
inline double psi2(const ZetaSpec& spec, double t) { return zeta_eval(spec, t); }

}  // namespace funcval
