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

#include "genbound/metric.hpp"
#include "genbound/scenario.hpp"

namespace genbound {

// Standard-setting generalization-error bounds, each evaluated exactly by
// enumeration. Every value dominates |exact_gen_error| for a valid scenario.
// Bounds derived from the discrete metric use the loss range (b - a) taken
// as the exact min/max of the loss table.

enum class SubsetVariant {
  kSet,        // compare P_{W|S,R} against P_{W|S_{J^c},R}
  kPerSample,  // compare P_{W|S_{J^c} u Z_i,R} against P_{W|S_{J^c},R}, i in J
};

/// L * E[ W1(P_{W|S}, P_W) ].
double full_dataset_wasserstein(const DiscreteScenario& scenario);

/// (L/n) * sum_i E[ W1(P_{W|Z_i}, P_W) ].
double single_letter_wasserstein(const DiscreteScenario& scenario);

/// Random-subset bound at subset size m (expectation over J enumerates all
/// C(n,m) subsets; n <= 8). At m = n the set variant collapses to the
/// full-dataset bound when no auxiliary variable is present.
double random_subset_wasserstein(const DiscreteScenario& scenario, std::size_t m,
                                 SubsetVariant variant);

struct TvKlBound {
  double tv = 0.0;
  double kl = 0.0;  // the Psi(KL) form; always <= loss range since Psi <= 1
};

/// (b-a)/n * sum_i E[TV(P_{W|Z_i},P_W)] and its Psi(KL) companion.
TvKlBound tv_kl_single_letter(const DiscreteScenario& scenario);

/// Leave-one-out (m = 1) TV and Psi(KL) bounds against P_{W|S^{-j},R}.
TvKlBound tv_kl_random_subset(const DiscreteScenario& scenario);

struct MiChainBounds {
  double per_sample_jensen = 0.0;  // (b-a)/n * sum_i Psi(I(W;Z_i))
  double mi_over_n = 0.0;          // (b-a) * Psi(I(W;S)/n)
  double sqrt_form = 0.0;          // sqrt((b-a)^2 I(W;S) / (2n))
};

/// The mutual-information chain; the three values are nondecreasing.
MiChainBounds mi_chain_bounds(const DiscreteScenario& scenario);

struct BackwardBounds {
  double full = 0.0;    // Lz * E_W[ W1(P_{S|W}, P_S) ] on (Z^n, avg metric)
  double single = 0.0;  // (Lz/n) * sum_i E_W[ W1(P_{Z_i|W}, P_Z) ]
};

/// Backward-channel bounds under a metric on the sample space. The
/// Lipschitz-in-z constant is taken as the exact tightest one over the
/// loss table. The full-dataset distance lives on Z^n with the metric
/// rho_n(s, s') = (1/n) sum_i z_metric(z_i, z_i').
BackwardBounds backward_channel_bounds(const DiscreteScenario& scenario,
                                       const MetricSpace& z_metric);

struct FDivergenceBounds {
  // The lautum bound applies Psi to the per-sample lautum information
  // L(W;Z_i) = E_{Z_i}[KL(P_W || P_{W|Z_i})], expectation inside Psi.
  // Keeping the expectation outside (E[Psi(KL)]) would be tighter by
  // Jensen since Psi is concave; this evaluates the form with the
  // aggregated information measure.
  double lautum = 0.0;            // (b-a)/n * sum_i Psi(L(W;Z_i))
  double hellinger = 0.0;         // (b-a)/n * sum_i E[ H sqrt(4 - H^2) / 2 ]
  double chi2_via_kl = 0.0;       // (b-a)/(sqrt 2 n) * sum_i E[ sqrt(log(1 + chi2)) ]
  double chi2_basic = 0.0;        // (b-a)/(2n) * sum_i E[ sqrt(chi2) ]
  double chi2_variational = 0.0;  // (1/n) * sum_i E[ sqrt(Var_{P_W}[l(W',Z_i)] chi2) ]
};

/// Bounds driven by other information measures between P_{W|Z_i} and P_W.
FDivergenceBounds f_divergence_bounds(const DiscreteScenario& scenario);

}  // namespace genbound
