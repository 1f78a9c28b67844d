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

#include "genbound/scenario.hpp"

namespace genbound {

// Exact mutual-information functionals of a scenario's joint law, in nats.

/// I(W;S) = E_S[ KL(P_{W|S} || P_W) ].
double mi_hypothesis_dataset(const DiscreteScenario& scenario);

/// I(W;Z_i).
double mi_hypothesis_sample(const DiscreteScenario& scenario, std::size_t i);

/// I(W;Stilde) for the supersample view.
double mi_hypothesis_supersample(const SupersampleScenario& scenario);

/// The disintegrated dataset information at subset size m: the chain-rule
/// aggregate (n/m) * avg_J I(W;S_J | S_{J^c}) over all C(n,m) subsets.
/// At m = 1 this is sum_i I(W;Z_i | S^{-i}); at m = n it is I(W;S).
double disintegrated_mi_subset(const DiscreteScenario& scenario, std::size_t m);

/// I(W;U|Stilde).
double rs_cmi_mask(const SupersampleScenario& scenario);

/// I(W;U_i|Stilde).
double rs_cmi_bit_given_supersample(const SupersampleScenario& scenario, std::size_t i);

/// I(W;U_i|Stilde_i), conditioning only on the pair (Ztilde_i, Ztilde_{i+n}).
double rs_cmi_bit_given_pair(const SupersampleScenario& scenario, std::size_t i);

/// (n/m) * avg_J I(W;U_J | Stilde, U_{J^c}); at m = 1 this is
/// sum_j I(W;U_j | Stilde, U^{-j}), at m = n it is I(W;U|Stilde).
double rs_disintegrated_cmi_subset(const SupersampleScenario& scenario, std::size_t m);

}  // namespace genbound
