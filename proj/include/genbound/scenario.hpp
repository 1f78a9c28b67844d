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

#include <cstddef>
#include <string>
#include <vector>

#include "genbound/distribution.hpp"
#include "genbound/metric.hpp"

namespace genbound {

/// Largest state space the exact-enumeration engine accepts
/// (|Z|^n for the standard setting, |Z|^(2n) * 2^n for the supersample one).
inline constexpr std::size_t kEnumerationGuard = 1'000'000;

/// Loss table over hypothesis x sample pairs, stored w-major.
class LossTable {
 public:
  LossTable(std::size_t w_size, std::size_t z_size, std::vector<double> values);

  double operator()(std::size_t w, std::size_t z) const { return values_[w * z_size_ + z]; }
  std::size_t w_size() const { return w_size_; }
  std::size_t z_size() const { return z_size_; }
  double min() const { return min_; }
  double max() const { return max_; }
  double range() const { return max_ - min_; }

  /// Tightest constant C with |l(w,z) - l(w',z)| <= C * rho(w,w'), computed
  /// exhaustively over the table. rho must live on the hypothesis support.
  double lipschitz_in_w(const MetricSpace& rho) const;
  /// Same with the roles swapped: |l(w,z) - l(w,z')| <= C * rho(z,z').
  double lipschitz_in_z(const MetricSpace& rho) const;

 private:
  std::size_t w_size_ = 0, z_size_ = 0;
  std::vector<double> values_;
  double min_ = 0.0, max_ = 0.0;
};

/// The full joint law of a finite learner in the standard setting:
/// n i.i.d. samples S from p_z, a hypothesis kernel indexed by the ordered
/// sample tuple (and an optional auxiliary variable R independent of S),
/// a loss table, and the hypothesis metric with its Lipschitz constant.
///
/// Kernel rows are indexed s-major, r-minor: row = s_index * |R| + r, where
/// s_index encodes the tuple in base |Z| with digit 0 most significant.
/// When no auxiliary variable is used, |R| = 1 and p_r is the trivial law.
class DiscreteScenario {
 public:
  DiscreteScenario(std::size_t z_size, std::size_t n, FiniteDistribution p_z,
                   ConditionalKernel kernel, LossTable loss, MetricSpace metric,
                   double lipschitz, FiniteDistribution p_r = FiniteDistribution::uniform(1));

  std::size_t z_size() const { return z_size_; }
  std::size_t w_size() const { return loss_.w_size(); }
  std::size_t n() const { return n_; }
  std::size_t r_size() const { return p_r_.size(); }
  std::size_t sample_space_size() const { return sample_space_size_; }  // |Z|^n
  const FiniteDistribution& p_z() const { return p_z_; }
  const FiniteDistribution& p_r() const { return p_r_; }
  const ConditionalKernel& kernel() const { return kernel_; }
  const LossTable& loss() const { return loss_; }
  const MetricSpace& metric() const { return metric_; }
  double lipschitz() const { return lipschitz_; }

  /// Probability of the ordered sample tuple with the given index.
  double sample_prob(std::size_t s_index) const;
  const FiniteDistribution& row(std::size_t s_index, std::size_t r_index) const;

 private:
  std::size_t z_size_ = 0, n_ = 0, sample_space_size_ = 0;
  FiniteDistribution p_z_;
  FiniteDistribution p_r_;
  ConditionalKernel kernel_;
  LossTable loss_;
  MetricSpace metric_;
  double lipschitz_ = 0.0;
};

/// The randomized-subsample construction: a supersample of 2n symbols, a
/// fair Bernoulli mask U of length n selecting z_i = stilde[i + u_i * n],
/// and a hypothesis kernel indexed by (stilde, u) and optionally R.
///
/// Kernel rows are indexed stilde-major, then u (as an n-bit integer, bit i
/// = u_i), then r: row = (stilde_index * 2^n + u) * |R| + r.
class SupersampleScenario {
 public:
  SupersampleScenario(std::size_t z_size, std::size_t n, FiniteDistribution p_z,
                      ConditionalKernel kernel, LossTable loss, MetricSpace metric,
                      double lipschitz, FiniteDistribution p_r = FiniteDistribution::uniform(1));

  std::size_t z_size() const { return z_size_; }
  std::size_t w_size() const { return loss_.w_size(); }
  std::size_t n() const { return n_; }
  std::size_t r_size() const { return p_r_.size(); }
  std::size_t supersample_space_size() const { return supersample_space_size_; }  // |Z|^(2n)
  std::size_t mask_space_size() const { return mask_space_size_; }                // 2^n
  const FiniteDistribution& p_z() const { return p_z_; }
  const FiniteDistribution& p_r() const { return p_r_; }
  const ConditionalKernel& kernel() const { return kernel_; }
  const LossTable& loss() const { return loss_; }
  const MetricSpace& metric() const { return metric_; }
  double lipschitz() const { return lipschitz_; }

  double supersample_prob(std::size_t stilde_index) const;
  const FiniteDistribution& row(std::size_t stilde_index, std::size_t u, std::size_t r) const;

  /// Index of the selected sample z_i = stilde[i + u_i * n] in the alphabet.
  std::size_t selected_symbol(std::size_t stilde_index, std::size_t u, std::size_t i) const;
  /// Index of the held-out sample stilde[i + (1 - u_i) * n].
  std::size_t heldout_symbol(std::size_t stilde_index, std::size_t u, std::size_t i) const;

 private:
  std::size_t z_size_ = 0, n_ = 0;
  std::size_t supersample_space_size_ = 0, mask_space_size_ = 0;
  FiniteDistribution p_z_;
  FiniteDistribution p_r_;
  ConditionalKernel kernel_;
  LossTable loss_;
  MetricSpace metric_;
  double lipschitz_ = 0.0;
};

/// E[population risk - empirical risk] by exhaustive enumeration over
/// Z^n x R x W. Pure and exact; the enumeration guard caps |Z|^n.
double exact_gen_error(const DiscreteScenario& scenario);

/// E[risk on the held-out half - risk on the selected half], enumerated
/// over Z^(2n) x {0,1}^n x R x W.
double exact_empirical_gen_error(const SupersampleScenario& scenario);

/// The standard-setting view of a supersample learner: S is the selected
/// half and the kernel is P(W | S = s) = E[P(W | Stilde, U) | S = s].
/// For kernels that train on the selected half only, the empirical and the
/// standard generalization errors coincide.
DiscreteScenario induce_standard(const SupersampleScenario& scenario);

/// The supersample view of a standard learner: the lifted kernel trains on
/// the selected half, P(W | stilde, u) = P(W | S = s(stilde, u)).
SupersampleScenario lift_to_supersample(const DiscreteScenario& scenario);

// Exact conditional laws of the hypothesis. `fixed` assigns a symbol to a
// subset of sample positions (kNoValue elsewhere); the remaining positions
// are averaged under p_z. r = kNoValue marginalizes the auxiliary variable.
inline constexpr std::size_t kNoValue = static_cast<std::size_t>(-1);

FiniteDistribution hypothesis_marginal(const DiscreteScenario& scenario);
FiniteDistribution hypothesis_posterior(const DiscreteScenario& scenario,
                                        std::span<const std::size_t> fixed,
                                        std::size_t r = kNoValue);

/// P(W | Ztilde_i = a, Ztilde_{i+n} = b [, U_i = u] [, R = r]) with
/// everything else marginalized. Pass kNoValue to leave U_i or R free.
FiniteDistribution rs_pair_posterior(const SupersampleScenario& scenario, std::size_t i,
                                     std::size_t a, std::size_t b, std::size_t u_i,
                                     std::size_t r = kNoValue);

/// P(W | stilde, U_A = u_A [, R = r]): mask positions in `u_fixed` with
/// kNoValue are averaged out.
FiniteDistribution rs_mask_posterior(const SupersampleScenario& scenario,
                                     std::size_t stilde_index,
                                     std::span<const std::size_t> u_fixed,
                                     std::size_t r = kNoValue);

}  // namespace genbound
