#ifndef QDISK_SUITE_HPP
#define QDISK_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qdisk/json_io.hpp"

namespace qdisk {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int dim = 64;
  int max_mn = 6;
  double tolerance = 1e-9;
  std::vector<std::string> suites;  // empty selects every suite
};

/// One executed check.  `anchor` states the property in formula form so a
/// report line can be traced back to the statement it exercises.
struct CheckRecord {
  std::string name;
  std::string anchor;
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckRecord> checks;

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

const std::vector<std::string>& suite_names();

/// Runs a single named suite; throws ConfigError for unknown names.
std::vector<CheckRecord> run_suite(const std::string& name, const SuiteConfig& cfg);

/// Runs the selected suites (all when none selected); deterministic for a
/// fixed (seed, config) even though suites execute concurrently.
SuiteReport run_property_suite(const SuiteConfig& cfg);

Json report_to_json(const SuiteReport& rep);
std::string report_to_csv(const SuiteReport& rep);

}  // namespace qdisk

#endif
