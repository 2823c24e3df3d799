// funcval: verification suites and evaluators for valuations on convex functions.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or parse error.

#include "funcval/errors.hpp"
#include "funcval/io.hpp"
#include "funcval/suites.hpp"
#include "funcval/valuations.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw funcval::FuncvalError(funcval::ErrorCode::ParseError, "bad t-grid entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw funcval::FuncvalError(funcval::ErrorCode::ParseError, "empty t-grid");
  return out;
}

int run_verify(funcval::SuiteConfig config) {
  if (config.suite.empty() || !funcval::is_suite(config.suite)) {
    std::cerr << "funcval verify: unknown suite \"" << config.suite << "\"; expected one of:";
    for (const auto& s : funcval::suite_names()) std::cerr << ' ' << s;
    std::cerr << '\n';
    return kExitUsage;
  }
  if (const char* env = std::getenv("FUNCVAL_SEED")) {
    try {
      config.seed = std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      std::cerr << "funcval verify: FUNCVAL_SEED is not an integer\n";
      return kExitUsage;
    }
  }
  const funcval::Report report = funcval::run_suite(config);
  const std::string text = config.format == "csv" ? funcval::to_csv(report) : funcval::to_json(report);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.out);
    if (!out) {
      std::cerr << "funcval verify: cannot write " << config.out << '\n';
      return kExitUsage;
    }
    out << text;
  }
  std::cerr << report.suite << ": " << report.passed() << "/" << report.records.size() << " checks passed in "
            << std::fixed << std::setprecision(2) << report.wall_seconds << " s\n";
  return report.all_pass() ? kExitPass : kExitFail;
}

int run_eval(const std::string& fn_path, const std::string& spec_path) {
  using namespace funcval;
  const io::Function fn = io::function_from(io::read_json_file(fn_path));
  const ValuationSpec spec = io::valuation_spec_from(io::read_json_file(spec_path));
  ValuationValue val;
  if (const auto* u = std::get_if<PacfFinite>(&fn)) {
    val = z_total(*u, spec);
  } else {
    const auto& w = std::get<PacfRestricted>(fn);
    if (spec.zeta2) throw FuncvalError(ErrorCode::UnsupportedInput, "zeta2 diverges on functions with bounded domain");
    if (spec.zeta0) val.z0 = z0(w, *spec.zeta0);
    if (spec.zeta1) {
      Estimate e = z1(w, *spec.zeta1);
      val.z1 = e.value;
      val.z1_error = e.error;
    }
  }
  io::Json out{{"z0", val.z0}, {"z1", val.z1}, {"z1_error", val.z1_error}, {"z2", val.z2}, {"total", val.total()}};
  std::cout << out.dump(2) << '\n';
  return kExitPass;
}

int run_table(const std::string& spec_path, const std::string& grid_text) {
  using namespace funcval;
  const ValuationSpec spec = io::valuation_spec_from(io::read_json_file(spec_path));
  const std::vector<double> grid = parse_grid(grid_text);
  const PolytopeV cube = standard_body(BodyKind::Cube, spec.n);
  std::ostringstream os;
  os << std::setprecision(12);
  os << "t,psi0,psi1,psi2,psi0_hat,psi1_hat,psi2_hat\n";
  for (double t : grid) {
    const double p0 = spec.zeta0 ? zeta_eval(*spec.zeta0, t) : 0.0;
    const double p1 = spec.zeta1 ? psi1(*spec.zeta1, static_cast<int>(spec.n), t).value : 0.0;
    const double p2 = spec.zeta2 ? zeta_eval(*spec.zeta2, t) : 0.0;
    const GrowthSample g = growth_extract(spec, cube, t, {1, 2, 0.5});
    os << t << ',' << p0 << ',' << p1 << ',' << p2 << ',' << g.psi0 << ',' << g.psi1 << ',' << g.psi2 << '\n';
  }
  std::cout << os.str();
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of valuations on convex functions"};
  app.require_subcommand(1);

  funcval::SuiteConfig config;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", config.suite, "Suite name")->required();
  verify->add_option("--n", config.n, "Dimension (1..3)")->check(CLI::Range(1, 3));
  verify->add_option("--seed", config.seed, "Random seed (FUNCVAL_SEED overrides)");
  verify->add_option("--tol", config.tol, "Tolerance override")->check(CLI::PositiveNumber);
  verify->add_option("--trials", config.trials, "Number of random trials");
  verify->add_option("--out", config.out, "Report path (default: standard output)");
  verify->add_option("--format", config.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  std::string fn_path, spec_path, grid;
  auto* eval = app.add_subcommand("eval", "Evaluate the valuation components of a function");
  eval->add_option("--fn", fn_path, "Function JSON file")->required();
  eval->add_option("--spec", spec_path, "Valuation spec JSON file")->required();

  auto* table = app.add_subcommand("table", "Tabulate growth functions against their recovered values");
  table->add_option("--spec", spec_path, "Valuation spec JSON file")->required();
  table->add_option("--tgrid", grid, "Comma-separated t values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return run_verify(config);
    if (*eval) return run_eval(fn_path, spec_path);
    if (*table) return run_table(spec_path, grid);
  } catch (const funcval::FuncvalError& e) {
    std::cerr << "funcval: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "funcval: ParseError: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
