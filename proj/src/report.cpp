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

#include "genbound/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "genbound/bounds_standard.hpp"
#include "genbound/bounds_subsample.hpp"

namespace genbound {

namespace {

constexpr double kValiditySlack = 1e-9;

void validate(const BoundReport& report) {
  double floor = std::abs(report.gen_exact) - kValiditySlack;
  for (const auto& [name, value] : report.bounds) {
    if (std::isnan(value) || value < floor) {
      throw InvariantError("bound report: " + name + " fails validity");
    }
  }
}

std::string format_value(double v) {
  if (std::isinf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

BoundReport compute_bound_report(const DiscreteScenario& scenario, std::string id,
                                 const std::optional<MetricSpace>& z_metric) {
  BoundReport report;
  report.scenario_id = std::move(id);
  report.setting = "standard";
  report.gen_exact = exact_gen_error(scenario);
  report.metric_name = scenario.metric().is_discrete() ? "discrete" : "matrix";
  report.lipschitz = scenario.lipschitz();
  report.subset_size = 1;

  report.bounds.emplace_back("full_dataset_wasserstein", full_dataset_wasserstein(scenario));
  report.bounds.emplace_back("single_letter_wasserstein", single_letter_wasserstein(scenario));
  report.bounds.emplace_back("random_subset_wasserstein_set",
                             random_subset_wasserstein(scenario, 1, SubsetVariant::kSet));
  report.bounds.emplace_back("random_subset_wasserstein_per_sample",
                             random_subset_wasserstein(scenario, 1, SubsetVariant::kPerSample));

  TvKlBound single = tv_kl_single_letter(scenario);
  report.bounds.emplace_back("tv_single_letter", single.tv);
  report.bounds.emplace_back("kl_single_letter", single.kl);
  TvKlBound subset = tv_kl_random_subset(scenario);
  report.bounds.emplace_back("tv_random_subset", subset.tv);
  report.bounds.emplace_back("kl_random_subset", subset.kl);

  MiChainBounds chain = mi_chain_bounds(scenario);
  report.bounds.emplace_back("mi_per_sample_jensen", chain.per_sample_jensen);
  report.bounds.emplace_back("mi_over_n", chain.mi_over_n);
  report.bounds.emplace_back("mi_sqrt_form", chain.sqrt_form);

  BackwardBounds backward = backward_channel_bounds(
      scenario, z_metric ? *z_metric : MetricSpace::discrete(scenario.z_size()));
  report.bounds.emplace_back("backward_full", backward.full);
  report.bounds.emplace_back("backward_single_letter", backward.single);

  FDivergenceBounds fdiv = f_divergence_bounds(scenario);
  report.bounds.emplace_back("lautum", fdiv.lautum);
  report.bounds.emplace_back("hellinger", fdiv.hellinger);
  report.bounds.emplace_back("chi2_via_kl", fdiv.chi2_via_kl);
  report.bounds.emplace_back("chi2_basic", fdiv.chi2_basic);
  report.bounds.emplace_back("chi2_variational", fdiv.chi2_variational);

  validate(report);
  return report;
}

BoundReport compute_bound_report(const SupersampleScenario& scenario, std::string id) {
  BoundReport report;
  report.scenario_id = std::move(id);
  report.setting = "supersample";
  report.gen_exact = exact_empirical_gen_error(scenario);
  report.metric_name = scenario.metric().is_discrete() ? "discrete" : "matrix";
  report.lipschitz = scenario.lipschitz();
  report.subset_size = 1;

  report.bounds.emplace_back("rs_full_dataset", rs_full_dataset(scenario));
  report.bounds.emplace_back("rs_single_letter", rs_single_letter(scenario));
  TvKlBound single = rs_tv_kl_single_letter(scenario);
  report.bounds.emplace_back("rs_tv_single_letter", single.tv);
  report.bounds.emplace_back("rs_kl_single_letter", single.kl);
  report.bounds.emplace_back("rs_random_subset_set",
                             rs_random_subset(scenario, 1, SubsetVariant::kSet));
  report.bounds.emplace_back("rs_random_subset_per_sample",
                             rs_random_subset(scenario, 1, SubsetVariant::kPerSample));
  TvKlBound subset = rs_tv_kl_random_subset(scenario);
  report.bounds.emplace_back("rs_tv_random_subset", subset.tv);
  report.bounds.emplace_back("rs_kl_random_subset", subset.kl);

  validate(report);
  return report;
}

std::string report_to_json(const BoundReport& report) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["scenario_id"] = report.scenario_id;
  doc["setting"] = report.setting;
  doc["gen_exact"] = report.gen_exact;
  doc["metric"] = report.metric_name;
  doc["lipschitz"] = report.lipschitz;
  doc["subset_size"] = report.subset_size;
  nlohmann::ordered_json bounds;
  for (const auto& [name, value] : report.bounds) {
    if (std::isinf(value)) {
      bounds[name] = "inf";
    } else {
      bounds[name] = value;
    }
  }
  doc["bounds"] = bounds;
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const BoundReport& report) {
  std::string out = "scenario_id,name,value\n";
  out += report.scenario_id + ",gen_exact," + format_value(report.gen_exact) + "\n";
  for (const auto& [name, value] : report.bounds) {
    out += report.scenario_id + "," + name + "," + format_value(value) + "\n";
  }
  return out;
}

}  // namespace genbound
