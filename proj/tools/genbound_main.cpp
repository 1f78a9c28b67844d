// Copyright 2026 the genbound authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// genbound CLI: scenario bound reports, Gaussian-location-model sweeps, and
// verification runs. Links only the C API from genbound.h.
//
// Exit codes: 0 success, 1 verification-check failure, 2 usage or parse
// error, 3 scenario-invariant violation.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genbound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

int status_to_exit(gb_status status) {
  switch (status) {
    case GB_OK:
      return kExitOk;
    case GB_ERR_CHECK_FAILED:
      return kExitCheckFailed;
    case GB_ERR_INVARIANT:
      return kExitInvariant;
    case GB_ERR_PARSE:
    case GB_ERR_USAGE:
      return kExitUsage;
    default:
      return kExitUsage;
  }
}

// Writes to the path (refusing to clobber without --force) or to stdout.
int emit(const std::string& text, const std::string& path, bool force) {
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  if (!force && std::filesystem::exists(path)) {
    std::cerr << "genbound: refusing to overwrite '" << path << "' without --force\n";
    return kExitUsage;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "genbound: cannot open '" << path << "' for writing\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

int thread_cap() {
  const char* env = std::getenv("GENBOUND_THREADS");
  if (env == nullptr) return 1;
  int value = std::atoi(env);
  return value >= 1 ? value : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genbound: exact generalization-error bounds on finite scenarios"};
  app.set_version_flag("--version", gb_version());
  app.require_subcommand(1);
  char err[512] = {0};

  // ---- bounds ----------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "Exact bound report for a scenario file");
  std::string scenario_path, bounds_output, bounds_format = "json";
  bool bounds_force = false;
  bounds->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  bounds->add_option("-o,--output", bounds_output, "Output path (default: stdout)");
  bounds->add_option("--format", bounds_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  bounds->add_flag("--force", bounds_force, "Overwrite an existing output file");

  // ---- glm -------------------------------------------------------------
  auto* glm = app.add_subcommand("glm", "Gaussian location model sweep (CSV)");
  int glm_d = 1;
  double glm_sigma2 = 1.0;
  std::vector<int> glm_n_list;
  long glm_trials = 10000;
  std::uint64_t glm_seed = 0;
  std::string glm_output;
  bool glm_force = false;
  glm->add_option("--d", glm_d, "Dimension")->required();
  glm->add_option("--sigma2", glm_sigma2, "Per-coordinate variance")->required();
  glm->add_option("--n-list", glm_n_list, "Sample counts (n >= 2)")->required()->expected(-1);
  glm->add_option("--trials", glm_trials, "Monte Carlo trials per n (>= 1000)");
  glm->add_option("--seed", glm_seed, "RNG seed")->required();
  glm->add_option("-o,--output", glm_output, "Output path (default: stdout)");
  glm->add_flag("--force", glm_force, "Overwrite an existing output file");

  // ---- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Randomized verification suites (JSON lines)");
  std::string suite = "all";
  long verify_trials = 0;
  std::uint64_t verify_seed = 0;
  bool mutate = false;
  std::string verify_output;
  bool verify_force = false;
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"orderings", "mi", "validity", "appendix-h", "all"}));
  verify->add_option("--trials", verify_trials, "Trials per check")->required();
  verify->add_option("--seed", verify_seed, "RNG seed")->required();
  verify->add_flag("--mutate", mutate, "Deflate one bound by 0.9 (mutation sanity)");
  verify->add_option("-o,--output", verify_output, "Output path (default: stdout)");
  verify->add_flag("--force", verify_force, "Overwrite an existing output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (bounds->parsed()) {
    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) {
      std::cerr << "genbound: cannot read '" << scenario_path << "'\n";
      return kExitUsage;
    }
    std::ostringstream text;
    text << in.rdbuf();
    std::string default_id = std::filesystem::path(scenario_path).stem().string();

    gb_scenario* scenario = nullptr;
    gb_status status =
        gb_scenario_from_json(text.str().c_str(), default_id.c_str(), &scenario, err, sizeof err);
    if (status != GB_OK) {
      std::cerr << "genbound: " << err << "\n";
      return status_to_exit(status);
    }
    gb_report* report = nullptr;
    status = gb_report_compute(scenario, &report, err, sizeof err);
    if (status != GB_OK) {
      std::cerr << "genbound: " << err << "\n";
      gb_scenario_free(scenario);
      return status_to_exit(status);
    }
    char* rendered = nullptr;
    status = bounds_format == "csv" ? gb_report_to_csv(report, &rendered, err, sizeof err)
                                    : gb_report_to_json(report, &rendered, err, sizeof err);
    int code = kExitUsage;
    if (status == GB_OK) {
      code = emit(rendered, bounds_output, bounds_force);
      gb_string_free(rendered);
    } else {
      std::cerr << "genbound: " << err << "\n";
      code = status_to_exit(status);
    }
    gb_report_free(report);
    gb_scenario_free(scenario);
    return code;
  }

  if (glm->parsed()) {
    char* csv = nullptr;
    gb_status status = gb_glm_sweep_csv(glm_d, glm_sigma2, glm_n_list.data(), glm_n_list.size(),
                                        glm_trials, glm_seed, &csv, err, sizeof err);
    if (status != GB_OK) {
      std::cerr << "genbound: " << err << "\n";
      return status_to_exit(status);
    }
    int code = emit(csv, glm_output, glm_force);
    gb_string_free(csv);
    return code;
  }

  if (verify->parsed()) {
    if (verify_trials < 1) {
      std::cerr << "genbound: --trials must be >= 1\n";
      return kExitUsage;
    }
    char* jsonl = nullptr;
    int all_passed = 0;
    gb_status status = gb_verify_run(suite.c_str(), verify_trials, verify_seed, mutate ? 1 : 0,
                                     thread_cap(), &jsonl, &all_passed, err, sizeof err);
    if (status != GB_OK && status != GB_ERR_CHECK_FAILED) {
      std::cerr << "genbound: " << err << "\n";
      return status_to_exit(status);
    }
    int code = emit(jsonl, verify_output, verify_force);
    gb_string_free(jsonl);
    if (code != kExitOk) return code;
    return all_passed ? kExitOk : kExitCheckFailed;
  }

  return kExitUsage;
}
