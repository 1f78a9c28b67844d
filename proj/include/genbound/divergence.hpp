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

#include "genbound/distribution.hpp"

namespace genbound {

// f-divergences between two distributions on the same ordered support.
// All logarithms are natural. Divergences live in the extended reals:
// +infinity is a legitimate value and is never clamped, so a vacuous
// bound downstream surfaces as +infinity rather than silently saturating.

/// TV(P,Q) = sup_A { P(A) - Q(A) } = half the L1 distance. In [0, 1].
double total_variation(const FiniteDistribution& p, const FiniteDistribution& q);

/// KL(P||Q) with 0 log 0 := 0; +infinity when P charges a point Q does not.
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

/// chi^2(P,Q) = sum_x (p - q)^2 / q; +infinity on absolute-continuity failure.
double chi_squared(const FiniteDistribution& p, const FiniteDistribution& q);

/// H(P,Q) = sqrt(sum_x (sqrt p - sqrt q)^2). In [0, sqrt 2].
double hellinger(const FiniteDistribution& p, const FiniteDistribution& q);

/// The divergence the lautum information is built from: KL with the
/// arguments reversed, KL(Q||P).
double lautum_component(const FiniteDistribution& p, const FiniteDistribution& q);

/// Psi(x) = sqrt(min{x/2, 1 - exp(-x)}): the tighter of the Pinsker and
/// Bretagnolle-Huber conversions from KL to total variation.
/// Psi(0) = 0, Psi is nondecreasing, Psi(+inf) = 1. Throws on x < 0.
double psi(double x);

/// The unique positive root of x/2 = 1 - exp(-x): where the Pinsker and BH
/// branches of Psi swap. Solved by bisection to 1e-10; lands near 1.5936.
double pinsker_bh_crossover();

/// Bobkov-Goetze conversion: an upper bound on W1 from KL when every
/// 1-Lipschitz function is sigma-subgaussian, sqrt(2 sigma^2 KL).
double w_from_kl_subgaussian(double kl_value, double sigma);

/// Joint-range conversion from the Hellinger distance to total variation:
/// TV <= h * sqrt(4 - h^2) / 2 for h in [0, sqrt 2].
double hellinger_tv_bound(double h);

struct Chi2TvBounds {
  double via_kl;  // sqrt(log(1 + chi2)) / sqrt 2, using KL <= log(1 + chi2)
  double basic;   // sqrt(chi2) / 2
};

/// Two conversions from the chi-squared divergence to total variation.
Chi2TvBounds chi2_tv_bounds(double chi2);

}  // namespace genbound
