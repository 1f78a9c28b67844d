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

#include "genbound/information.hpp"

#include <vector>

#include "genbound/divergence.hpp"

namespace genbound {

namespace {

// All subsets of {0..n-1} with m elements, as ascending bitmasks.
std::vector<std::size_t> subsets_of_size(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw DomainError("subset enumeration: size out of range");
  if (n > 8) throw DomainError("subset enumeration: guard requires n <= 8");
  std::vector<std::size_t> masks;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == m) masks.push_back(mask);
  }
  return masks;
}

// R-marginal forward channel P_{W|s}.
FiniteDistribution row_marginal_r(const DiscreteScenario& scenario, std::size_t s) {
  if (scenario.r_size() == 1) return scenario.row(s, 0);
  std::vector<double> acc(scenario.w_size(), 0.0);
  for (std::size_t r = 0; r < scenario.r_size(); ++r) {
    const FiniteDistribution& row = scenario.row(s, r);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] += scenario.p_r()[r] * row[w];
  }
  return FiniteDistribution(std::move(acc));
}

FiniteDistribution rs_row_marginal_r(const SupersampleScenario& scenario, std::size_t st,
                                     std::size_t u) {
  if (scenario.r_size() == 1) return scenario.row(st, u, 0);
  std::vector<double> acc(scenario.w_size(), 0.0);
  for (std::size_t r = 0; r < scenario.r_size(); ++r) {
    const FiniteDistribution& row = scenario.row(st, u, r);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] += scenario.p_r()[r] * row[w];
  }
  return FiniteDistribution(std::move(acc));
}

}  // namespace

double mi_hypothesis_dataset(const DiscreteScenario& scenario) {
  FiniteDistribution p_w = hypothesis_marginal(scenario);
  double mi = 0.0;
  for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
    double ps = scenario.sample_prob(s);
    if (ps == 0.0) continue;
    mi += ps * kl_divergence(row_marginal_r(scenario, s), p_w);
  }
  return mi;
}

double mi_hypothesis_sample(const DiscreteScenario& scenario, std::size_t i) {
  if (i >= scenario.n()) throw DomainError("mi: sample index out of range");
  FiniteDistribution p_w = hypothesis_marginal(scenario);
  std::vector<std::size_t> fixed(scenario.n(), kNoValue);
  double mi = 0.0;
  for (std::size_t z = 0; z < scenario.z_size(); ++z) {
    double pz = scenario.p_z()[z];
    if (pz == 0.0) continue;
    fixed[i] = z;
    mi += pz * kl_divergence(hypothesis_posterior(scenario, fixed), p_w);
  }
  return mi;
}

double disintegrated_mi_subset(const DiscreteScenario& scenario, std::size_t m) {
  const std::size_t n = scenario.n();
  auto masks = subsets_of_size(n, m);
  double total = 0.0;
  std::vector<std::size_t> fixed(n, kNoValue);
  for (std::size_t mask : masks) {
    // I(W; S_J | S_{J^c}) = E_S[ KL(P_{W|S} || P_{W|S_{J^c}}) ].
    for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
      double ps = scenario.sample_prob(s);
      if (ps == 0.0) continue;
      auto digits = index_to_tuple(s, scenario.z_size(), n);
      for (std::size_t i = 0; i < n; ++i) {
        fixed[i] = (mask >> i) & 1u ? kNoValue : digits[i];
      }
      total += ps * kl_divergence(row_marginal_r(scenario, s),
                                  hypothesis_posterior(scenario, fixed));
    }
  }
  double average = total / static_cast<double>(masks.size());
  return average * static_cast<double>(n) / static_cast<double>(m);
}

double mi_hypothesis_supersample(const SupersampleScenario& scenario) {
  const std::size_t n = scenario.n();
  std::vector<std::size_t> all_free(n, kNoValue);
  // P_W over the supersample draw.
  std::vector<double> acc(scenario.w_size(), 0.0);
  std::vector<FiniteDistribution> cond;
  std::vector<double> probs;
  cond.reserve(scenario.supersample_space_size());
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    double pst = scenario.supersample_prob(st);
    if (pst == 0.0) continue;
    FiniteDistribution p_w_st = rs_mask_posterior(scenario, st, all_free);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] += pst * p_w_st[w];
    cond.push_back(std::move(p_w_st));
    probs.push_back(pst);
  }
  FiniteDistribution p_w{std::move(acc)};
  double mi = 0.0;
  for (std::size_t k = 0; k < cond.size(); ++k) {
    mi += probs[k] * kl_divergence(cond[k], p_w);
  }
  return mi;
}

double rs_cmi_mask(const SupersampleScenario& scenario) {
  const std::size_t n = scenario.n();
  std::vector<std::size_t> all_free(n, kNoValue);
  const double uw = 1.0 / static_cast<double>(scenario.mask_space_size());
  double mi = 0.0;
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    double pst = scenario.supersample_prob(st);
    if (pst == 0.0) continue;
    FiniteDistribution base = rs_mask_posterior(scenario, st, all_free);
    for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
      mi += pst * uw * kl_divergence(rs_row_marginal_r(scenario, st, u), base);
    }
  }
  return mi;
}

double rs_cmi_bit_given_supersample(const SupersampleScenario& scenario, std::size_t i) {
  const std::size_t n = scenario.n();
  if (i >= n) throw DomainError("rs cmi: bit index out of range");
  std::vector<std::size_t> mask_fixed(n, kNoValue);
  double mi = 0.0;
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    double pst = scenario.supersample_prob(st);
    if (pst == 0.0) continue;
    mask_fixed.assign(n, kNoValue);
    FiniteDistribution base = rs_mask_posterior(scenario, st, mask_fixed);
    for (std::size_t v = 0; v < 2; ++v) {
      mask_fixed[i] = v;
      mi += pst * 0.5 * kl_divergence(rs_mask_posterior(scenario, st, mask_fixed), base);
    }
  }
  return mi;
}

double rs_cmi_bit_given_pair(const SupersampleScenario& scenario, std::size_t i) {
  const std::size_t n = scenario.n();
  if (i >= n) throw DomainError("rs cmi: bit index out of range");
  double mi = 0.0;
  for (std::size_t a = 0; a < scenario.z_size(); ++a) {
    for (std::size_t b = 0; b < scenario.z_size(); ++b) {
      double w = scenario.p_z()[a] * scenario.p_z()[b];
      if (w == 0.0) continue;
      FiniteDistribution base = rs_pair_posterior(scenario, i, a, b, kNoValue);
      for (std::size_t v = 0; v < 2; ++v) {
        mi += w * 0.5 * kl_divergence(rs_pair_posterior(scenario, i, a, b, v), base);
      }
    }
  }
  return mi;
}

double rs_disintegrated_cmi_subset(const SupersampleScenario& scenario, std::size_t m) {
  const std::size_t n = scenario.n();
  auto masks = subsets_of_size(n, m);
  const double uw = 1.0 / static_cast<double>(scenario.mask_space_size());
  std::vector<std::size_t> mask_fixed(n, kNoValue);
  double total = 0.0;
  for (std::size_t mask : masks) {
    for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
      double pst = scenario.supersample_prob(st);
      if (pst == 0.0) continue;
      for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
        for (std::size_t i = 0; i < n; ++i) {
          mask_fixed[i] = (mask >> i) & 1u ? kNoValue : ((u >> i) & 1u);
        }
        total += pst * uw * kl_divergence(rs_row_marginal_r(scenario, st, u),
                                          rs_mask_posterior(scenario, st, mask_fixed));
      }
    }
  }
  double average = total / static_cast<double>(masks.size());
  return average * static_cast<double>(n) / static_cast<double>(m);
}

}  // namespace genbound
