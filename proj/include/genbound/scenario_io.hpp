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
#include <variant>

#include "genbound/metric.hpp"
#include "genbound/scenario.hpp"

namespace genbound {

/// A scenario parsed from the JSON text format (docs/scenario_schema.md),
/// together with its id and the optional sample-space metric used by the
/// backward-channel bounds.
struct LoadedScenario {
  std::variant<DiscreteScenario, SupersampleScenario> scenario;
  std::string id;
  std::optional<MetricSpace> z_metric;

  bool is_standard() const { return std::holds_alternative<DiscreteScenario>(scenario); }
};

/// Parses a scenario document. Throws ParseError with field diagnostics on
/// malformed input and InvariantError when a stated invariant (e.g. the
/// declared Lipschitz constant) fails validation.
LoadedScenario load_scenario_json(const std::string& text,
                                  const std::string& default_id = "scenario");

}  // namespace genbound
