// Acceptance run: one PASS/FAIL line per criterion, each backed by suite
// records filtered by name. Tolerances, trial counts and time limits are
// pinned here and printed with the verdict.
//
// Exit code: 0 when every criterion passes, 1 otherwise.

#include "funcval/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace {

using funcval::CheckRecord;
using funcval::Report;
using funcval::SuiteConfig;

struct Run {
  std::string suite;
  std::size_t n;
  std::size_t trials;              // 0: the suite's default
  double tol;                      // 0: exact suite, no tolerance
  std::set<std::string> records;   // names counted toward the criterion
};

struct Criterion {
  int id;
  std::string title;
  std::string tolerance;  // human-readable, printed with the verdict
  double limit_seconds;
  std::size_t min_checks;
  std::vector<Run> runs;
};

struct Verdict {
  std::size_t checks = 0;
  std::size_t passed = 0;
  double seconds = 0;
  std::string first_failure;
};

Verdict evaluate(const Criterion& c) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (const Run& r : c.runs) {
    SuiteConfig config;
    config.suite = r.suite;
    config.n = r.n;
    config.trials = r.trials;
    config.tol = r.tol;
    const Report report = funcval::run_suite(config);
    for (const CheckRecord& rec : report.records) {
      if (!r.records.count(rec.name)) continue;
      ++v.checks;
      if (rec.pass) {
        ++v.passed;
      } else if (v.first_failure.empty()) {
        v.first_failure = rec.name + " n=" + std::to_string(r.n) + " [" + rec.inputs + "] expected " + rec.expected +
                          ", got " + rec.got;
      }
    }
  }
  v.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return v;
}

std::vector<Criterion> criteria() {
  const std::set<std::string> valuation{"valuation-identity", "valuation-z0-exact", "valuation-z2-exact"};
  const std::set<std::string> invariance{"invariance-z0", "invariance-z1", "invariance-z2"};
  const std::set<std::string> homogeneity{"homogeneity-z0", "homogeneity-z1", "homogeneity-z2"};
  const std::set<std::string> lattice{"biconjugate", "sl-equivariance", "lattice-conjugate"};
  return {
      {1, "T_delta lemma identities and polar-volume increment", "exact", 10, 36,
       {{"geometry", 2, 0, 0, {"t-delta-lemma"}}, {"geometry", 3, 0, 0, {"t-delta-lemma"}}}},
      {2, "conv(delta C u K) volume formula, 50 draws, n <= 3", "exact", 5, 50,
       {{"geometry", 2, 50, 0, {"conv-union"}}}},
      {3, "biconjugation, lattice conjugation, SL(n) equivariance on 200 PACFs", "exact", 60, 600,
       {{"conjugation", 2, 100, 0, lattice}, {"conjugation", 3, 100, 0, lattice}}},
      {4, "valuation identity over 100 generated pairs", "1e-6 (1 + |Z(u)| + |Z(v)|); z0, z2 exact", 300, 300,
       {{"valuation-identity", 2, 50, 1e-6, valuation}, {"valuation-identity", 3, 50, 1e-6, valuation}}},
      {5, "invariance under SL(n) and translation, 50 draws", "z0, z2 exact; z1 1e-6 relative", 120, 150,
       {{"invariance", 2, 25, 1e-6, invariance}, {"invariance", 3, 25, 1e-6, invariance}}},
      {6, "homogeneity degrees 0, n, -n for n = 2, 3", "1e-3 on fitted slopes", 60, 30,
       {{"homogeneity", 2, 5, 1e-3, homogeneity}, {"homogeneity", 3, 5, 1e-3, homogeneity}}},
      {7, "growth recovery on Q^2, T_1/4, C^2", "1e-5", 60, 45,
       {{"growth", 2, 0, 1e-5, {"growth-psi0", "growth-psi1", "growth-psi2", "growth-psi2-vanishes"}}}},
      {8, "moment lemma and reconstruction, n <= 3", "1e-9", 30, 60,
       {{"moment", 2, 0, 1e-9, {"moment-derivative", "moment-reconstruction"}}}},
      {9, "box-indicator identity, n = 1, 2, and the value 4", "1e-4 relative; 1e-6 for the value 4", 120, 37,
       {{"box-identity", 2, 0, 1e-4, {"box-identity", "box-identity-four"}}}},
      {10, "epi-continuity proxy along delta = 2/5, 1/5, 1/10, 1/20", "epi < 1e-2, value < 1e-3, both monotone", 120,
       20, {{"regdelta", 2, 20, 1e-2, {"regdelta-continuity"}}, {"regdelta", 3, 20, 1e-2, {"regdelta-continuity"}}}},
      {11, "seven-line chain on the 64-gon, lambda in {1, 2}, t in {0, 1}", "1e-4", 30, 4,
       {{"theorem-synthesis", 2, 0, 1e-4, {"theorem-synthesis"}}}},
      {12, "z2(u) = hessian_dual(u*) on 100 PACFs", "exact", 60, 100,
       {{"conjugation", 2, 50, 0, {"dual-consistency"}}, {"conjugation", 3, 50, 0, {"dual-consistency"}}}},
  };
}

}  // namespace

int main() {
  int passed = 0;
  const auto all = criteria();
  for (const Criterion& c : all) {
    const Verdict v = evaluate(c);
    const bool ok = v.checks >= c.min_checks && v.passed == v.checks && v.seconds < c.limit_seconds;
    passed += ok;
    std::printf("%s  %2d  %-70s %4zu/%-4zu checks  %7.2f s (limit %g s)  tol: %s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), v.passed, v.checks, v.seconds, c.limit_seconds, c.tolerance.c_str());
    if (v.checks < c.min_checks) std::printf("          only %zu checks, expected at least %zu\n", v.checks, c.min_checks);
    if (!v.first_failure.empty()) std::printf("          first failure: %s\n", v.first_failure.c_str());
    std::fflush(stdout);
  }
  std::printf("criteria passed: %d/%zu\n", passed, all.size());
  return passed == static_cast<int>(all.size()) ? 0 : 1;
}
