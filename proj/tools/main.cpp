#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "gaugekit/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gaugekit: connection/curvature/holonomy scenarios on principal bundles"};
  app.require_subcommand(1);

  gaugekit::RunOptions opts;
  std::string file, dir;
  int jobs = 1;

  auto* run = app.add_subcommand("run", "Run one scenario file");
  run->add_option("file", file, "scenario JSON file")->required();
  run->add_option("--out", opts.out_dir, "output directory");
  run->add_option("--fd-step", opts.fd_step, "finite-difference step override");
  run->add_option("--steps", opts.steps, "integrator step override");
  auto* seed_opt = run->add_option("--seed", opts.seed, "RNG seed override");

  auto* validate = app.add_subcommand("validate", "Schema-check a scenario file");
  validate->add_option("file", file, "scenario JSON file")->required();

  auto* suite = app.add_subcommand("suite", "Run a directory of scenarios");
  suite->add_option("dir", dir, "directory of scenario JSON files")->required();
  suite->add_option("--out", opts.out_dir, "output directory");
  suite->add_option("--jobs", jobs, "parallel scenario workers");
  suite->add_option("--fd-step", opts.fd_step, "finite-difference step override");
  suite->add_option("--steps", opts.steps, "integrator step override");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("GAUGEKIT_OUT")) opts.out_dir = env;
  opts.seed_set = seed_opt->count() > 0;

  if (app.got_subcommand("validate")) {
    auto problems = gaugekit::validate_scenario_file(file);
    if (problems.empty()) {
      std::cout << "ok\n";
      return 0;
    }
    for (const auto& p : problems) std::cerr << "error: " << p << '\n';
    return gaugekit::kExitParse;
  }

  if (app.got_subcommand("run")) {
    gaugekit::RunResult r = gaugekit::run_scenario_file(file, opts);
    std::cout << r.scenario << ": " << r.status;
    if (!r.message.empty()) std::cout << " (" << r.message << ")";
    std::cout << '\n';
    for (const auto& [k, v] : r.metrics) std::cout << "  " << k << " = " << v << '\n';
    return r.exit_code;
  }

  gaugekit::SuiteResult s = gaugekit::run_suite(dir, opts, jobs);
  for (const auto& r : s.results) {
    std::cout << r.scenario << ": " << r.status;
    if (!r.message.empty()) std::cout << " (" << r.message << ")";
    std::cout << '\n';
  }
  return s.exit_code;
}
