#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace funcval {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct SuiteConfig {
  std::string suite;
  std::size_t n = 2;
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 0;  // 0: the suite's own default
  double tol = 0;          // 0: the suite's own default
  std::string out;         // empty: standard output
  std::string format = "json";
};

struct CheckRecord {
  std::string name;
  std::string inputs;  // 16 hex digits of FNV-1a over the canonical input text
  std::string expected;
  std::string got;
  double gap = 0;
  bool pass = false;
};

struct Report {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckRecord> records;
  double wall_seconds = 0;

  std::size_t passed() const;
  std::size_t failed() const;
  bool all_pass() const { return failed() == 0 && !records.empty(); }
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite. Individual failures (including thrown errors) become
/// failing records; only an unknown suite name throws.
Report run_suite(const SuiteConfig& config);

std::string digest(const std::string& text);
std::string to_json(const Report& report);
std::string to_csv(const Report& report);

}  // namespace funcval
