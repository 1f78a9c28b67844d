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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genbound/scenario.hpp"

namespace genbound {

/// Slack below which an inequality check counts as violated. All checked
/// quantities are O(1), so an absolute tolerance is appropriate; the LP
/// optimality tolerance dominates it.
inline constexpr double kCheckSlack = -1e-9;

/// Configuration for the randomized scenario generator. Kernels mix sharp
/// (near-deterministic) and smooth rows 50/50: ordering propositions are
/// tight near determinism while smooth kernels exercise strict inequality.
struct SamplerConfig {
  std::uint64_t seed = 1;
  std::size_t n = 2;
  std::size_t z_size = 3;
  std::size_t w_size = 4;
  std::size_t r_size = 1;       // 1 disables the auxiliary variable
  double sharpness = 50.0;      // concentration of the sharp kernel rows
  bool random_metric = false;   // otherwise the discrete metric
};

class ScenarioSampler {
 public:
  explicit ScenarioSampler(const SamplerConfig& config);

  /// A fresh standard-setting scenario; deterministic given (config, call #).
  DiscreteScenario sample_standard();

  /// A supersample scenario with a raw kernel indexed by (stilde, u).
  SupersampleScenario sample_supersample();

  /// A supersample scenario lifted from a sampled standard learner; the
  /// one-learner-two-views family used by coincidence and cross-setting
  /// checks.
  SupersampleScenario sample_lifted();

 private:
  SamplerConfig config_;
  std::uint64_t counter_ = 0;
};

struct CheckReport {
  std::string name;
  long trials = 0;
  double worst_slack = 0.0;
  bool pass = false;  // pass iff worst_slack >= kCheckSlack
  std::optional<std::uint64_t> failing_seed;
};

/// JSON-lines serialization of one report (schema_version 1).
std::string check_report_to_json(const CheckReport& report);

// Each checker runs `trials` independently seeded scenarios and reports the
// worst slack seen per proposition. Failures are reported, never thrown.
// `threads` > 1 evaluates trials concurrently; results are reduced in trial
// order so reports are deterministic given (config, trials).

/// The seven Wasserstein ordering propositions: single <= full,
/// single <= subset, subset <= 2 full, their three rs analogues, and the
/// standard-vs-rs factor-2 triplet on lifted scenarios.
std::vector<CheckReport> check_wasserstein_orderings(const SamplerConfig& config, long trials,
                                                     int threads = 1);

/// The mutual-information chains for both settings, the cross-setting
/// comparisons, I(W;U|Stilde) <= n log 2, and the chain-rule decomposition
/// I(W;S) = I(W;Stilde) + I(W;U|Stilde) on lifted scenarios.
std::vector<CheckReport> check_mi_orderings(const SamplerConfig& config, long trials,
                                            int threads = 1);

/// Every implemented bound dominates the exact generalization error on both
/// settings. With inject_mutation, one bound is deliberately scaled by 0.9
/// and the check must fail (mutation sanity).
std::vector<CheckReport> check_bound_validity(const SamplerConfig& config, long trials,
                                              bool inject_mutation = false, int threads = 1);

/// The chi-squared comparisons on synthetic divergence pairs: the
/// variational bound never exceeds the basic one under the Popoviciu
/// variance cap, the Var = L^2/4 crossover against the via-KL bound sits
/// in [2.48, 2.54], and the largest variance for which the variational
/// bound dominates over the whole nonvacuous range matches L^2/(e^2 - 1).
std::vector<CheckReport> check_appendix_h(const SamplerConfig& config, long trials);

}  // namespace genbound
