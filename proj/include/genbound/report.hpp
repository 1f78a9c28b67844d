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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genbound/metric.hpp"
#include "genbound/scenario.hpp"

namespace genbound {

/// One scenario's exact generalization error together with every applicable
/// bound, in a fixed order. Construction validates that each finite bound
/// dominates |gen_exact| - 1e-9; +infinity entries are legitimate.
struct BoundReport {
  std::string scenario_id;
  std::string setting;  // "standard" or "supersample"
  double gen_exact = 0.0;
  std::vector<std::pair<std::string, double>> bounds;
  std::string metric_name;  // "discrete" or "matrix"
  double lipschitz = 0.0;
  std::size_t subset_size = 1;  // m used for the random-subset bounds
};

/// z_metric feeds the backward-channel bounds; the discrete metric on the
/// sample alphabet when absent.
BoundReport compute_bound_report(const DiscreteScenario& scenario, std::string id,
                                 const std::optional<MetricSpace>& z_metric = std::nullopt);
BoundReport compute_bound_report(const SupersampleScenario& scenario, std::string id);

/// JSON document with a schema_version field; +infinity serialized as "inf".
std::string report_to_json(const BoundReport& report);

/// CSV, one row per bound name: scenario_id,name,value. The exact
/// generalization error is the first row under the name gen_exact.
std::string report_to_csv(const BoundReport& report);

}  // namespace genbound
