#ifndef GAUGEKIT_SCENARIO_HPP
#define GAUGEKIT_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

namespace gaugekit {

// Exit codes of the scenario front-end.
enum ScenarioExit {
  kExitPass = 0,
  kExitThreshold = 1,
  kExitParse = 2,
  kExitCatalogMiss = 3,
  kExitNumeric = 4,
};

struct RunOptions {
  std::string out_dir = ".";
  double fd_step = 0;   // 0 = scenario/default value
  long steps = 0;       // 0 = scenario/default value
  uint64_t seed = 0;
  bool seed_set = false;
};

struct RunResult {
  std::string scenario;
  std::string status;  // "pass" | "fail" | "error"
  std::string message;
  std::map<std::string, double> metrics;
  std::vector<std::string> files;
  int exit_code = kExitPass;
};

/// Schema-only check; no execution. Returns a list of problems (empty = ok).
std::vector<std::string> validate_scenario_file(const std::string& path);

/// Parses, executes, writes artifacts, checks thresholds.
RunResult run_scenario_file(const std::string& path, const RunOptions& opts);

struct SuiteResult {
  std::vector<RunResult> results;
  int exit_code = kExitPass;
};

/// Runs every *.json scenario in the directory (sorted by filename) and
/// writes a single summary JSON into out_dir.
SuiteResult run_suite(const std::string& dir, const RunOptions& opts, int jobs = 1);

}  // namespace gaugekit

#endif
