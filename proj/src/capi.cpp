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

#include "genbound.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "genbound/bounds_standard.hpp"
#include "genbound/bounds_subsample.hpp"
#include "genbound/divergence.hpp"
#include "genbound/glm.hpp"
#include "genbound/report.hpp"
#include "genbound/scenario_io.hpp"
#include "genbound/transport.hpp"
#include "genbound/verify.hpp"

struct gb_scenario {
  genbound::LoadedScenario loaded;
};

struct gb_report {
  genbound::BoundReport report;
};

namespace {

void copy_error(char* err, size_t err_len, const char* message) {
  if (err == nullptr || err_len == 0) return;
  std::strncpy(err, message, err_len - 1);
  err[err_len - 1] = '\0';
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
gb_status guarded(char* err, size_t err_len, F&& body) {
  try {
    return body();
  } catch (const genbound::ParseError& e) {
    copy_error(err, err_len, e.what());
    return GB_ERR_PARSE;
  } catch (const genbound::InvariantError& e) {
    copy_error(err, err_len, e.what());
    return GB_ERR_INVARIANT;
  } catch (const genbound::DomainError& e) {
    copy_error(err, err_len, e.what());
    return GB_ERR_USAGE;
  } catch (const std::exception& e) {
    copy_error(err, err_len, e.what());
    return GB_ERR_INTERNAL;
  } catch (...) {
    copy_error(err, err_len, "unknown error");
    return GB_ERR_INTERNAL;
  }
}

genbound::FiniteDistribution make_distribution(const double* p, size_t k) {
  if (p == nullptr || k == 0) throw genbound::DomainError("null or empty probability vector");
  return genbound::FiniteDistribution(std::vector<double>(p, p + k));
}

}  // namespace

extern "C" {

const char* gb_version(void) { return "0.1.0"; }

void gb_string_free(char* s) { std::free(s); }

gb_status gb_scenario_from_json(const char* json_text, const char* id, gb_scenario** out,
                                char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (json_text == nullptr || out == nullptr) {
      throw genbound::DomainError("gb_scenario_from_json: null argument");
    }
    auto loaded = genbound::load_scenario_json(json_text, id ? id : "scenario");
    *out = new gb_scenario{std::move(loaded)};
    return GB_OK;
  });
}

void gb_scenario_free(gb_scenario* scenario) { delete scenario; }

int gb_scenario_is_standard(const gb_scenario* scenario) {
  return scenario != nullptr && scenario->loaded.is_standard() ? 1 : 0;
}

gb_status gb_scenario_gen_error(const gb_scenario* scenario, double* out, char* err,
                                size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (scenario == nullptr || out == nullptr) {
      throw genbound::DomainError("gb_scenario_gen_error: null argument");
    }
    if (scenario->loaded.is_standard()) {
      *out = genbound::exact_gen_error(std::get<genbound::DiscreteScenario>(scenario->loaded.scenario));
    } else {
      *out = genbound::exact_empirical_gen_error(
          std::get<genbound::SupersampleScenario>(scenario->loaded.scenario));
    }
    return GB_OK;
  });
}

gb_status gb_report_compute(const gb_scenario* scenario, gb_report** out, char* err,
                            size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (scenario == nullptr || out == nullptr) {
      throw genbound::DomainError("gb_report_compute: null argument");
    }
    genbound::BoundReport report =
        scenario->loaded.is_standard()
            ? genbound::compute_bound_report(
                  std::get<genbound::DiscreteScenario>(scenario->loaded.scenario),
                  scenario->loaded.id, scenario->loaded.z_metric)
            : genbound::compute_bound_report(
                  std::get<genbound::SupersampleScenario>(scenario->loaded.scenario),
                  scenario->loaded.id);
    *out = new gb_report{std::move(report)};
    return GB_OK;
  });
}

void gb_report_free(gb_report* report) { delete report; }

gb_status gb_report_to_json(const gb_report* report, char** out, char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (report == nullptr || out == nullptr) {
      throw genbound::DomainError("gb_report_to_json: null argument");
    }
    *out = dup_string(genbound::report_to_json(report->report));
    return *out != nullptr ? GB_OK : GB_ERR_INTERNAL;
  });
}

gb_status gb_report_to_csv(const gb_report* report, char** out, char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (report == nullptr || out == nullptr) {
      throw genbound::DomainError("gb_report_to_csv: null argument");
    }
    *out = dup_string(genbound::report_to_csv(report->report));
    return *out != nullptr ? GB_OK : GB_ERR_INTERNAL;
  });
}

size_t gb_report_bound_count(const gb_report* report) {
  return report == nullptr ? 0 : report->report.bounds.size();
}

gb_status gb_report_bound(const gb_report* report, size_t index, const char** name,
                          double* value, char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (report == nullptr || index >= report->report.bounds.size()) {
      throw genbound::DomainError("gb_report_bound: index out of range");
    }
    if (name != nullptr) *name = report->report.bounds[index].first.c_str();
    if (value != nullptr) *value = report->report.bounds[index].second;
    return GB_OK;
  });
}

double gb_report_gen_error(const gb_report* report) {
  return report == nullptr ? 0.0 : report->report.gen_exact;
}

gb_status gb_psi(double x, double* out, char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (out == nullptr) throw genbound::DomainError("gb_psi: null output");
    *out = genbound::psi(x);
    return GB_OK;
  });
}

double gb_pinsker_bh_crossover(void) { return genbound::pinsker_bh_crossover(); }

gb_status gb_total_variation(const double* p, const double* q, size_t k, double* out, char* err,
                             size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (out == nullptr) throw genbound::DomainError("gb_total_variation: null output");
    *out = genbound::total_variation(make_distribution(p, k), make_distribution(q, k));
    return GB_OK;
  });
}

gb_status gb_kl_divergence(const double* p, const double* q, size_t k, double* out, char* err,
                           size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (out == nullptr) throw genbound::DomainError("gb_kl_divergence: null output");
    *out = genbound::kl_divergence(make_distribution(p, k), make_distribution(q, k));
    return GB_OK;
  });
}

gb_status gb_wasserstein1(const double* p, const double* q, const double* dist, size_t k,
                          double* out, double* plan, char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (out == nullptr || dist == nullptr) {
      throw genbound::DomainError("gb_wasserstein1: null argument");
    }
    genbound::MetricSpace space(k, std::vector<double>(dist, dist + k * k));
    auto result = genbound::wasserstein1_exact(make_distribution(p, k),
                                               make_distribution(q, k), space);
    *out = result.value;
    if (plan != nullptr) {
      std::memcpy(plan, result.plan.matrix().data(), sizeof(double) * k * k);
    }
    return GB_OK;
  });
}

gb_status gb_glm_value(gb_glm_curve which, int d, double sigma2, int n, double* out, char* err,
                       size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (out == nullptr) throw genbound::DomainError("gb_glm_value: null output");
    genbound::GlmConfig cfg;
    cfg.d = d;
    cfg.sigma2 = sigma2;
    switch (which) {
      case GB_GLM_GEN_EXACT:
        *out = genbound::glm_exact_gen(cfg, n);
        break;
      case GB_GLM_BOUND_FULL:
        *out = genbound::glm_full_bound(cfg, n);
        break;
      case GB_GLM_BOUND_SINGLE:
        *out = genbound::glm_single_letter_bound(cfg, n);
        break;
      case GB_GLM_BOUND_SUBSET:
        *out = genbound::glm_random_subset_bound(cfg, n);
        break;
      case GB_GLM_BOUND_ISMI:
        *out = genbound::glm_ismi_bound(cfg, n);
        break;
      default:
        throw genbound::DomainError("gb_glm_value: unknown curve");
    }
    return GB_OK;
  });
}

gb_status gb_glm_monte_carlo(int d, double sigma2, int n, long trials, uint64_t seed,
                             double* estimate, double* std_error, char* err, size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (estimate == nullptr) throw genbound::DomainError("gb_glm_monte_carlo: null output");
    genbound::GlmConfig cfg;
    cfg.d = d;
    cfg.sigma2 = sigma2;
    cfg.trials = trials;
    cfg.seed = seed;
    auto mc = genbound::glm_monte_carlo_gen(cfg, n);
    *estimate = mc.estimate;
    if (std_error != nullptr) *std_error = mc.std_error;
    return GB_OK;
  });
}

gb_status gb_glm_sweep_csv(int d, double sigma2, const int* n_values, size_t n_count,
                           long trials, uint64_t seed, char** out_csv, char* err,
                           size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (out_csv == nullptr || n_values == nullptr || n_count == 0) {
      throw genbound::DomainError("gb_glm_sweep_csv: null argument");
    }
    genbound::GlmConfig cfg;
    cfg.d = d;
    cfg.sigma2 = sigma2;
    cfg.n_values.assign(n_values, n_values + n_count);
    cfg.trials = trials;
    cfg.seed = seed;
    *out_csv = dup_string(genbound::glm_sweep_csv(cfg));
    return *out_csv != nullptr ? GB_OK : GB_ERR_INTERNAL;
  });
}

gb_status gb_verify_run(const char* suite, long trials, uint64_t seed, int inject_mutation,
                        int threads, char** out_jsonl, int* all_passed, char* err,
                        size_t err_len) {
  return guarded(err, err_len, [&]() -> gb_status {
    if (suite == nullptr || out_jsonl == nullptr || all_passed == nullptr) {
      throw genbound::DomainError("gb_verify_run: null argument");
    }
    if (trials < 1) throw genbound::DomainError("gb_verify_run: trials must be >= 1");
    std::string name = suite;
    bool all = name == "all";
    if (!all && name != "orderings" && name != "mi" && name != "validity" &&
        name != "appendix-h") {
      throw genbound::DomainError("gb_verify_run: unknown suite '" + name + "'");
    }

    genbound::SamplerConfig config;
    config.seed = seed;
    std::vector<genbound::CheckReport> reports;
    auto append = [&](std::vector<genbound::CheckReport> batch) {
      for (auto& r : batch) reports.push_back(std::move(r));
    };
    if (all || name == "orderings") {
      append(genbound::check_wasserstein_orderings(config, trials, threads));
    }
    if (all || name == "mi") append(genbound::check_mi_orderings(config, trials, threads));
    if (all || name == "validity") {
      append(genbound::check_bound_validity(config, trials, inject_mutation != 0, threads));
    }
    if (all || name == "appendix-h") append(genbound::check_appendix_h(config, trials));

    std::string jsonl;
    bool passed = true;
    for (const auto& report : reports) {
      jsonl += genbound::check_report_to_json(report);
      jsonl += '\n';
      passed = passed && report.pass;
    }
    *out_jsonl = dup_string(jsonl);
    if (*out_jsonl == nullptr) return GB_ERR_INTERNAL;
    *all_passed = passed ? 1 : 0;
    return passed ? GB_OK : GB_ERR_CHECK_FAILED;
  });
}

}  // extern "C"
