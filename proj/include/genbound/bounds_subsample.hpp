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

#include "genbound/bounds_standard.hpp"
#include "genbound/scenario.hpp"

namespace genbound {

// Randomized-subsample-setting bounds. Each dominates the absolute
// empirical generalization error; the factor 2 relative to the standard
// setting comes from splitting the selected/held-out risks.

/// 2L * E[ W1(P_{W|Stilde,U}, P_{W|Stilde}) ].
double rs_full_dataset(const SupersampleScenario& scenario);

/// (2L/n) * sum_i E[ W1(P_{W|Stilde_i,U_i}, P_{W|Stilde_i}) ].
double rs_single_letter(const SupersampleScenario& scenario);

/// 2(b-a)/n * sum_i E[TV] and (b-a)/n * sum_i E[sqrt(2 KL)]; the BH branch
/// is not needed because each per-letter KL is capped at log 2.
TvKlBound rs_tv_kl_single_letter(const SupersampleScenario& scenario);

/// Random-subset bound over mask bits at subset size m.
double rs_random_subset(const SupersampleScenario& scenario, std::size_t m,
                        SubsetVariant variant);

/// Leave-one-bit-out (m = 1) TV and sqrt(2 KL) bounds.
TvKlBound rs_tv_kl_random_subset(const SupersampleScenario& scenario);

/// Max over rows (a, b) of KL(P_{X|a,b} || P_{X|a}) for a kernel whose
/// input space is A x {0,1}^k, indexed a-major with the mask in the low
/// bits, where the mask bits are fair and independent of A. The returned
/// maximum never exceeds k log 2.
double kl_log2_lemma_check(const ConditionalKernel& kernel, std::size_t bernoulli_bits);

}  // namespace genbound
