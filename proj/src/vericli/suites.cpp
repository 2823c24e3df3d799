#include "funcval/suites.hpp"

#include "funcval/errors.hpp"
#include "funcval/generators.hpp"
#include "funcval/io.hpp"
#include "funcval/linalg.hpp"
#include "funcval/valuations.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

namespace funcval {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fn_text(const PacfFinite& u) { return io::function_to(u).dump(); }

class Recorder {
 public:
  explicit Recorder(std::vector<CheckRecord>& out) : out_(out) {}

  void exact(const std::string& name, const std::string& inputs, const std::string& expected, const std::string& got,
             bool pass) {
    out_.push_back({name, digest(inputs), expected, got, pass ? 0.0 : 1.0, pass});
  }

  void close(const std::string& name, const std::string& inputs, double expected, double got, double gap, double tol) {
    out_.push_back({name, digest(inputs), fmt(expected), fmt(got), gap, gap <= tol});
  }

  // Runs a check; a thrown library error becomes a failing record.
  void guard(const std::string& name, const std::string& inputs, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out_.push_back({name, digest(inputs), "no error", e.what(), 1.0, false});
    }
  }

 private:
  std::vector<CheckRecord>& out_;
};

double rel_gap(double expected, double got) { return std::abs(got - expected) / std::max(1.0, std::abs(expected)); }

ValuationSpec full_spec(std::size_t n) {
  return ValuationSpec{n, ZetaSpec::exp_decay(1, ZetaRole::Zeta0), ZetaSpec::exp_decay(1, ZetaRole::Zeta1),
                       ZetaSpec::bump(0, 1, 1, ZetaRole::Zeta2)};
}

std::size_t trials_or(const SuiteConfig& c, std::size_t fallback) { return c.trials ? c.trials : fallback; }
double tol_or(const SuiteConfig& c, double fallback) { return c.tol > 0 ? c.tol : fallback; }

std::vector<PolytopeV> reference_bodies(std::size_t n) {
  std::vector<PolytopeV> out{standard_body(BodyKind::Cube, n), standard_body(BodyKind::Cross, n)};
  if (n >= 2) out.insert(out.begin() + 1, standard_body(BodyKind::TDelta, n, {Rational(1, 4)}));
  return out;
}

bool non_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[i - 1]) return false;
  return true;
}

// --- geometry ---------------------------------------------------------------

void suite_geometry(const SuiteConfig& c, Recorder& rec) {
  const std::size_t n = c.n;
  if (n >= 2) {
    for (const Rational& delta : {Rational(1, 5), Rational(1, 4), Rational(2, 5)}) {
      for (const Rational& rho : {Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
        for (const Rational& t : {Rational(1), Rational(2)}) {
          std::string in = "n=" + std::to_string(n) + " delta=" + to_string(delta) + " rho=" + to_string(rho) +
                           " b=1 t=" + to_string(t);
          rec.guard("t-delta-lemma", in, [&] {
            auto r = lemma_t_delta_suite(n, delta, rho, Rational(1), t);
            rec.exact("t-delta-lemma", in, to_string(r.closed_form), to_string(r.increment), r.all());
          });
        }
      }
    }
  }
  Rng rng(c.seed);
  const std::size_t trials = trials_or(c, 50);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t dim = 1 + i % 3;
    Vec cs(dim);
    for (auto& x : cs) x = Rational(static_cast<long>(1 + rng() % 12), static_cast<long>(1 + rng() % 4));
    Rational delta(static_cast<long>(1 + rng() % 8), static_cast<long>(1 + rng() % 4));
    std::string in = "c=" + to_string(cs) + " delta=" + to_string(delta);
    rec.guard("conv-union", in, [&] {
      auto r = conv_union_volume_check(cs, delta);
      rec.exact("conv-union", in, to_string(r.formula), to_string(r.computed), r.pass());
    });
  }
  for (std::size_t i = 0; i < std::max<std::size_t>(1, trials / 5); ++i) {
    PolytopeV p = random_body(rng, n, 4);
    std::string in = "body=" + std::to_string(i);
    rec.guard("bipolar", in, [&] {
      bool ok = polar_body(polar_body(p)) == p && *to_vrep(to_hrep(p)) == p && volume(p) == volume(to_hrep(p));
      rec.exact("bipolar", in, "P", ok ? "P" : "mismatch", ok);
    });
  }
}

// --- conjugation ------------------------------------------------------------

void suite_conjugation(const SuiteConfig& c, Recorder& rec) {
  const std::size_t n = c.n;
  Rng rng(c.seed);
  const std::size_t trials = trials_or(c, 200);
  const ZetaSpec bump = ZetaSpec::bump(0, 1, 1, ZetaRole::Zeta2);
  for (std::size_t i = 0; i < trials; ++i) {
    PacfFinite u = random_coercive_pacf(rng, n, n + 1 + rng() % (8 - n));
    std::string in = fn_text(u);
    rec.guard("biconjugate", in, [&] {
      bool ok = conjugate(conjugate(u)) == canonicalize(u);
      rec.exact("biconjugate", in, "u", ok ? "u" : "mismatch", ok);
    });
    Matrix phi = random_unimodular(n, rng(), 3).matrix;
    rec.guard("sl-equivariance", in, [&] {
      bool ok = conjugate(compose_linear(u, phi)) == compose_linear(conjugate(u), inverse(transpose(phi)));
      rec.exact("sl-equivariance", in, "equal", ok ? "equal" : "mismatch", ok);
    });
    rec.guard("dual-consistency", in, [&] {
      PacfRestricted w = conjugate(u);
      auto lhs = *z2_exact(u, bump);
      auto rhs = *hessian_dual_exact(w, bump);
      bool ok = lhs == rhs && monge_ampere_measure(u) == hessian_dual_measure(w);
      rec.exact("dual-consistency", in, to_string(lhs), to_string(rhs), ok);
    });
    const std::uint64_t pair_seed = rng();
    std::string pin = "pair seed=" + std::to_string(pair_seed);
    rec.guard("lattice-conjugate", pin, [&] {
      GeneratedPair p = generate_pair(n, pair_seed);
      bool ok = conjugate(p.min) == canonicalize(max_fn(conjugate(p.u), conjugate(p.v)));
      rec.exact("lattice-conjugate", pin + " " + family_name(p.family), "equal", ok ? "equal" : "mismatch", ok);
    });
  }
}

// --- regdelta ---------------------------------------------------------------

void suite_regdelta(const SuiteConfig& c, Recorder& rec) {
  const std::size_t n = c.n;
  Rng rng(c.seed);
  const std::vector<Rational> deltas{Rational(2, 5), Rational(1, 5), Rational(1, 10), Rational(1, 20)};
  const double epi_bound = tol_or(c, 1e-2);
  const double value_bound = epi_bound / 10;
  const ValuationSpec spec = full_spec(n);
  std::vector<std::pair<std::string, PacfFinite>> family;
  const std::size_t trials = trials_or(c, 20);
  for (std::size_t i = 0; i < trials; ++i) {
    family.emplace_back("random", random_coercive_pacf(rng, n, n + 3, Rational(4)));
  }
  for (const auto& k : reference_bodies(n)) family.emplace_back("cone", cone_function(k));
  for (const auto& [kind, u] : family) {
    std::string in = kind + " " + fn_text(u);
    rec.guard("regdelta-continuity", in, [&] {
      const Rational m = min_value(u).value;
      std::vector<Rational> grid{m, m + 1, m + 2, m + 4};
      const double zu = z_total(u, spec).total();
      std::vector<double> epi, val;
      const PacfFinite cu = canonicalize(u);
      for (const auto& d : deltas) {
        PacfFinite r = canonicalize(reg_delta(u, d));
        // Once the cube contains every slope the regularization is exact.
        const bool same = r == cu;
        epi.push_back(same ? 0.0 : epiconv_distance(r, u, grid));
        val.push_back(same ? 0.0 : std::abs(z_total(r, spec).total() - zu));
      }
      bool ok_epi = non_increasing(epi) && epi.back() < epi_bound;
      bool ok_val = non_increasing(val) && val.back() < value_bound;
      std::ostringstream got;
      got << "epi=";
      for (double e : epi) got << fmt(e) << ';';
      got << " value=";
      for (double v : val) got << fmt(v) << ';';
      rec.exact("regdelta-continuity", in, "non-increasing, ends below bounds", got.str(), ok_epi && ok_val);
      // reg_delta never exceeds u.
      bool below = true;
      for (const auto& d : deltas) {
        PacfFinite r = reg_delta(u, d);
        for (int s = 0; s < 8; ++s) {
          Vec x(n);
          for (auto& xi : x) xi = random_rational(rng, 8, 2);
          below = below && r(x) <= u(x);
        }
      }
      rec.exact("regdelta-below", in, "reg <= u", below ? "reg <= u" : "violated", below);
    });
  }
  for (const auto& k : reference_bodies(n)) {
    std::string in = "cone " + fn_text(cone_function(k));
    rec.guard("regdelta-cone", in, [&] {
      bool ok = true;
      for (const auto& d : deltas) {
        PolytopeV grown = conv_union(k, scale(standard_body(BodyKind::Cross, n), d));
        ok = ok && canonicalize(reg_delta(cone_function(k), d)) == canonicalize(cone_function(grown));
      }
      rec.exact("regdelta-cone", in, "l_{conv(K u dC)}", ok ? "l_{conv(K u dC)}" : "mismatch", ok);
    });
  }
}

// --- valuation identity -----------------------------------------------------

void suite_valuation_identity(const SuiteConfig& c, Recorder& rec) {
  const std::size_t n = c.n;
  Rng rng(c.seed);
  const double tol = tol_or(c, 1e-6);
  const ValuationSpec spec = full_spec(n);
  const std::size_t trials = trials_or(c, 100);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = rng();
    std::string in = "pair seed=" + std::to_string(seed) + " n=" + std::to_string(n);
    rec.guard("valuation-identity", in, [&] {
      GeneratedPair p = generate_pair(n, seed);
      auto r = valuation_identity_check(spec, p.u, p.v, tol);
      const double lhs = r.max.total() + r.min.total(), rhs = r.u.total() + r.v.total();
      rec.close("valuation-identity", in + " " + family_name(p.family), rhs, lhs, r.gap, r.bound);
      rec.exact("valuation-z0-exact", in, "cancel", r.z0_exact ? "cancel" : "residual", r.z0_exact);
      rec.exact("valuation-z2-exact", in, "cancel", r.z2_exact ? "cancel" : "residual", r.z2_exact);
    });
  }
}

// --- invariance -------------------------------------------------------------

void suite_invariance(const SuiteConfig& c, Recorder& rec) {
  const std::size_t n = c.n;
  Rng rng(c.seed);
  const double tol = tol_or(c, 1e-6);
  const ValuationSpec spec = full_spec(n);
  const std::size_t trials = trials_or(c, 50);
  for (std::size_t i = 0; i < trials; ++i) {
    PacfFinite u = random_coercive_pacf(rng, n, n + 1 + rng() % 4);
    Matrix phi = random_unimodular(n, rng(), 4).matrix;
    Vec y(n);
    for (auto& x : y) x = random_rational(rng, 9, 4);
    std::string in = fn_text(u) + " y=" + to_string(y);
    rec.guard("invariance", in, [&] {
      const PacfFinite mapped = compose_linear(u, phi), moved = translate_fn(u, y);
      const Rational m = min_value(u).value;
      bool z0_ok = min_value(mapped).value == m && min_value(moved).value == m;
      rec.exact("invariance-z0", in, to_string(m), z0_ok ? to_string(m) : "changed", z0_ok);
      const auto mu = monge_ampere_measure(u);
      bool z2_ok = monge_ampere_measure(mapped) == mu && monge_ampere_measure(moved) == mu;
      rec.exact("invariance-z2", in, "same measure", z2_ok ? "same measure" : "changed", z2_ok);
      const double base = z_total(u, spec).z1;
      const double a = z_total(mapped, spec).z1, b = z_total(moved, spec).z1;
      const double gap = std::max(std::abs(a - base), std::abs(b - base)) / std::max(std::abs(base), 1e-300);
      rec.close("invariance-z1", in, base, std::abs(a - base) > std::abs(b - base) ? a : b, gap, tol);
    });
  }
}

// --- homogeneity ------------------------------------------------------------

void suite_homogeneity(const SuiteConfig& c, Recorder& rec) {
  const std::size_t n = c.n;
  Rng rng(c.seed);
  const double tol = tol_or(c, 1e-3);
  const ValuationSpec spec = full_spec(n);
  const std::vector<double> lambdas{0.5, 1, 2, 4};
  const std::size_t trials = trials_or(c, 5);
  for (std::size_t i = 0; i < trials; ++i) {
    PacfFinite u = random_coercive_pacf(rng, n, n + 1 + rng() % 3);
    u = add_constant(u, -min_value(u).value);  // keeps the bump weight active
    std::string in = fn_text(u);
    rec.guard("homogeneity", in, [&] {
      std::vector<double> v0, v1, v2;
      for (double lam : lambdas) {
        auto val = z_total(scale_hom(u, from_double(lam)), spec);
        v0.push_back(val.z0);
        v1.push_back(val.z1);
        v2.push_back(val.z2);
      }
      const double dn = static_cast<double>(n);
      const double s0 = loglog_slope(lambdas, v0), s1 = loglog_slope(lambdas, v1), s2 = loglog_slope(lambdas, v2);
      rec.close("homogeneity-z0", in, 0, s0, std::abs(s0), tol);
      rec.close("homogeneity-z1", in, dn, s1, std::abs(s1 - dn), tol);
      rec.close("homogeneity-z2", in, -dn, s2, std::abs(s2 + dn), tol);
    });
  }
}

// --- growth -----------------------------------------------------------------

void suite_growth(const SuiteConfig& c, Recorder& rec) {
  const double tol = tol_or(c, 1e-5);
  const ValuationSpec spec = full_spec(2);
  const double bump_end = support_end(*spec.zeta2);
  const std::vector<std::pair<std::string, PolytopeV>> bodies{
      {"Q2", standard_body(BodyKind::Cube, 2)},
      {"T1/4", standard_body(BodyKind::TDelta, 2, {Rational(1, 4)})},
      {"C2", standard_body(BodyKind::Cross, 2)}};
  for (const auto& [name, k] : bodies) {
    for (double t : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      std::string in = "K=" + name + " t=" + fmt(t);
      rec.guard("growth", in, [&] {
        GrowthSample g = growth_extract(spec, k, t, {1, 2, 0.5});
        const double p0 = zeta_eval(*spec.zeta0, t), p1 = psi1(*spec.zeta1, 2, t).value, p2 = zeta_eval(*spec.zeta2, t);
        rec.close("growth-psi0", in, p0, g.psi0, rel_gap(p0, g.psi0), tol);
        rec.close("growth-psi1", in, p1, g.psi1, rel_gap(p1, g.psi1), tol);
        rec.close("growth-psi2", in, p2, g.psi2, rel_gap(p2, g.psi2), tol);
        if (t >= bump_end) rec.close("growth-psi2-vanishes", in, 0, g.psi2, std::abs(g.psi2), tol);
      });
    }
  }
}

// --- moment -----------------------------------------------------------------

void suite_moment(const SuiteConfig& c, Recorder& rec) {
  const double tol = tol_or(c, 1e-9);
  for (int n = 1; n <= 3; ++n) {
    const std::vector<ZetaSpec> specs{ZetaSpec::exp_decay(1, ZetaRole::Zeta1), ZetaSpec::exp_decay(2.5, ZetaRole::Zeta1),
                                      ZetaSpec::poly_cutoff(6, n + 1, ZetaRole::Zeta1)};
    for (const auto& z : specs) {
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      double nfact = 1;
      for (int i = 2; i <= n; ++i) nfact *= i;
      for (int i = 0; i < 10; ++i) {
        const double t = 0.5 * i;
        std::string in = describe(z) + " n=" + std::to_string(n) + " t=" + fmt(t);
        rec.guard("moment-derivative", in, [&] {
          const double got = sign * psi1_quadrature(z, n, t, n).value / nfact;
          const double want = zeta_eval(z, t);
          rec.close("moment-derivative", in, want, got, std::abs(got - want) / std::max(1.0, std::abs(want)), tol);
        });
      }
      std::string in = describe(z) + " n=" + std::to_string(n) + " t=0.5";
      rec.guard("moment-reconstruction", in, [&] {
        const double want = zeta_eval(z, 0.5);
        double prev = std::abs(moment_reconstruction(z, n, 0.5, 4).value - want);
        bool halving = true;
        for (double r : {8.0, 16.0, 32.0, 64.0}) {
          double err = std::abs(moment_reconstruction(z, n, 0.5, r).value - want);
          halving = halving && err <= 0.5 * prev + 1e-12 * std::max(1.0, want);
          prev = err;
        }
        bool ok = halving && prev <= tol * std::max(1.0, want);
        rec.exact("moment-reconstruction", in, "halving, final <= tol", "final " + fmt(prev), ok);
      });
    }
  }
}

// --- box identity -----------------------------------------------------------

void suite_box_identity(const SuiteConfig& c, Recorder& rec) {
  const double tol = tol_or(c, 1e-4);
  const ZetaSpec z = ZetaSpec::exp_decay(1, ZetaRole::Zeta1);
  for (std::size_t n : {1u, 2u}) {
    for (const Rational& lambda : {Rational(1, 2), Rational(1), Rational(2)}) {
      for (const Rational& delta : {Rational(1, 4), Rational(1, 2), Rational(1)}) {
        for (const Rational& t : {Rational(0), Rational(1)}) {
          std::string in = "n=" + std::to_string(n) + " lambda=" + to_string(lambda) + " delta=" + to_string(delta) +
                           " t=" + to_string(t);
          rec.guard("box-identity", in, [&] {
            auto r = box_identity_check(n, lambda, delta, t, z, tol);
            rec.close("box-identity", in, r.rhs, r.lhs, r.gap, tol);
          });
        }
      }
    }
  }
  std::string in = "n=2 lambda=1 delta=1/2 t=0";
  rec.guard("box-identity-four", in, [&] {
    auto r = box_identity_check(2, Rational(1), Rational(1, 2), Rational(0), z, 1e-6);
    rec.close("box-identity-four", in, 4.0, r.lhs, std::abs(r.lhs - 4.0) / 4.0, 1e-6);
  });
}

// --- theorem synthesis ------------------------------------------------------

void suite_theorem_synthesis(const SuiteConfig& c, Recorder& rec) {
  const double tol = tol_or(c, 1e-4);
  const PolytopeV disc = standard_body(BodyKind::Ball, 2, {Rational(64)});
  const ValuationSpec spec = full_spec(2);
  for (const Rational& lambda : {Rational(1), Rational(2)}) {
    for (const Rational& t : {Rational(0), Rational(1)}) {
      std::string in = "64-gon lambda=" + to_string(lambda) + " t=" + to_string(t);
      rec.guard("theorem-synthesis", in, [&] {
        auto r = theorem_synthesis(spec, disc, lambda, t, tol);
        rec.close("theorem-synthesis", in, r.lines.front(), r.lines.back(), r.gap, tol);
      });
    }
  }
}

using SuiteFn = void (*)(const SuiteConfig&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"geometry", suite_geometry},
      {"conjugation", suite_conjugation},
      {"regdelta", suite_regdelta},
      {"valuation-identity", suite_valuation_identity},
      {"invariance", suite_invariance},
      {"homogeneity", suite_homogeneity},
      {"growth", suite_growth},
      {"moment", suite_moment},
      {"box-identity", suite_box_identity},
      {"theorem-synthesis", suite_theorem_synthesis},
  };
  return r;
}

}  // namespace

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.pass; }));
}
std::size_t Report::failed() const { return records.size() - passed(); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

Report run_suite(const SuiteConfig& config) {
  for (const auto& [name, fn] : registry()) {
    if (name != config.suite) continue;
    if (config.n < 1 || config.n > 3) throw FuncvalError(ErrorCode::ParameterOutOfRange, "suites run for n in 1..3");
    Report report{name, config, {}, 0};
    Recorder rec(report.records);
    const auto start = std::chrono::steady_clock::now();
    fn(config, rec);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
  }
  throw FuncvalError(ErrorCode::UnsupportedInput, "unknown suite \"" + config.suite + "\"");
}

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string to_json(const Report& report) {
  io::Json records = io::Json::array();
  for (const auto& r : report.records) {
    records.push_back({{"name", r.name},
                       {"inputs", r.inputs},
                       {"expected", r.expected},
                       {"got", r.got},
                       {"gap", r.gap},
                       {"pass", r.pass}});
  }
  io::Json j{{"suite", report.suite},
             {"config",
              {{"n", report.config.n},
               {"seed", report.config.seed},
               {"trials", report.config.trials},
               {"tol", report.config.tol}}},
             {"summary", {{"total", report.records.size()}, {"passed", report.passed()}, {"failed", report.failed()}}},
             {"wall_seconds", report.wall_seconds},
             {"records", records}};
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "name,inputs,expected,got,gap,pass\n";
  for (const auto& r : report.records) {
    os << r.name << ',' << r.inputs << ',' << quote(r.expected) << ',' << quote(r.got) << ',' << fmt(r.gap) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

}  // namespace funcval
