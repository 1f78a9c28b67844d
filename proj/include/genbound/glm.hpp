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

namespace genbound {

// Gaussian location model: estimate the mean of N(mu, sigma2 * I_d) by the
// empirical mean of n samples under the Euclidean loss l(w,z) = |w - z|_2.
// Everything below is mu-invariant; mu only enters the Monte Carlo path and
// is asserted away by tests rather than assumed.

struct GlmConfig {
  int d = 1;
  double sigma2 = 1.0;
  std::vector<int> n_values;
  long trials = 10000;
  std::uint64_t seed = 1;
  std::vector<double> mu;  // empty means the origin
};

/// Gamma((d+1)/2) / Gamma(d/2) through lgamma differences, stable up to
/// very large d (naive Gamma overflows near d = 340).
double gamma_half_ratio(double d);

/// Exact expected generalization error,
/// sqrt(2 sigma2 / n) (sqrt(n+1) - sqrt(n-1)) * gamma_half_ratio(d).
/// Requires n >= 2; always at most sqrt(2 sigma2 d) / n.
double glm_exact_gen(const GlmConfig& cfg, int n);

/// Full-dataset transport bound, sqrt(4 sigma2 / n) * gamma_half_ratio(d).
double glm_full_bound(const GlmConfig& cfg, int n);

/// Single-letter bound through the Gaussian W2 closed form,
/// sqrt(2 sigma2)/n * gamma_half_ratio(d) + sqrt(sigma2 d / n^3).
double glm_single_letter_bound(const GlmConfig& cfg, int n);

/// Leave-one-out random-subset bound, sqrt(4 sigma2)/n * gamma_half_ratio(d).
double glm_random_subset_bound(const GlmConfig& cfg, int n);

/// Individual-sample mutual-information bound; derived for d = 1 only:
/// sqrt(sigma2 (1 + 1/n) log(n / (n-1))). Requires n >= 2.
double glm_ismi_bound(const GlmConfig& cfg, int n);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of the generalization error: per trial, draw the
/// dataset plus one fresh sample and average l(W, Z') - L_S(W).
/// Deterministic for a fixed seed (Box-Muller over a seeded mt19937_64,
/// one stream per (d, n) cell).
McEstimate glm_monte_carlo_gen(const GlmConfig& cfg, int n);

struct GlmCurvePoint {
  int n = 0;
  double gen_exact = 0.0;
  double gen_mc = 0.0;
  double gen_mc_se = 0.0;
  double bound_full = 0.0;
  double bound_single = 0.0;
  double bound_subset = 0.0;
  std::optional<double> bound_ismi;  // present iff d == 1
};

std::vector<GlmCurvePoint> glm_sweep(const GlmConfig& cfg);

/// CSV with the stable header
/// d,sigma2,n,gen_exact,gen_mc,gen_mc_se,bound_full,bound_single,bound_subset,bound_ismi
/// and an empty bound_ismi field when d != 1. Byte-identical for identical
/// configs.
std::string glm_sweep_csv(const GlmConfig& cfg);

}  // namespace genbound
