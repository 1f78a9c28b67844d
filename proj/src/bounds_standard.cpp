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

#include "genbound/bounds_standard.hpp"

#include <cmath>
#include <vector>

#include "genbound/divergence.hpp"
#include "genbound/information.hpp"
#include "genbound/transport.hpp"

namespace genbound {

namespace {

FiniteDistribution row_marginal_r(const DiscreteScenario& scenario, std::size_t s) {
  if (scenario.r_size() == 1) return scenario.row(s, 0);
  std::vector<double> acc(scenario.w_size(), 0.0);
  for (std::size_t r = 0; r < scenario.r_size(); ++r) {
    const FiniteDistribution& row = scenario.row(s, r);
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] += scenario.p_r()[r] * row[w];
  }
  return FiniteDistribution(std::move(acc));
}

std::vector<std::size_t> subsets_of_size(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw DomainError("random subset: size out of range");
  if (n > 8) throw DomainError("random subset: guard requires n <= 8");
  std::vector<std::size_t> masks;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == m) masks.push_back(mask);
  }
  return masks;
}

// Average distance between the single-letter posterior P_{W|Z_i} and P_W
// under a per-pair functional.
template <typename F>
double single_letter_average(const DiscreteScenario& scenario, F&& pair_value) {
  FiniteDistribution p_w = hypothesis_marginal(scenario);
  std::vector<std::size_t> fixed(scenario.n(), kNoValue);
  double total = 0.0;
  for (std::size_t i = 0; i < scenario.n(); ++i) {
    fixed.assign(scenario.n(), kNoValue);
    for (std::size_t z = 0; z < scenario.z_size(); ++z) {
      double pz = scenario.p_z()[z];
      if (pz == 0.0) continue;
      fixed[i] = z;
      total += pz * pair_value(hypothesis_posterior(scenario, fixed), p_w);
    }
  }
  return total / static_cast<double>(scenario.n());
}

// Expectation over (J, S, R) of pair_value(P_{W|S,R}, P_{W|S_{J^c},R}).
// The posterior given S_{J^c} is shared across all completions of S_J.
template <typename F>
double subset_set_average(const DiscreteScenario& scenario, std::size_t m, F&& pair_value) {
  const std::size_t n = scenario.n();
  const std::size_t z = scenario.z_size();
  auto masks = subsets_of_size(n, m);
  std::vector<std::size_t> fixed(n, kNoValue);
  double total = 0.0;
  for (std::size_t mask : masks) {
    std::vector<std::size_t> subset_positions, complement_positions;
    for (std::size_t i = 0; i < n; ++i) {
      ((mask >> i) & 1u ? subset_positions : complement_positions).push_back(i);
    }
    std::size_t complement_combos = 1;
    for (std::size_t i = 0; i < complement_positions.size(); ++i) complement_combos *= z;
    std::size_t subset_combos = 1;
    for (std::size_t i = 0; i < subset_positions.size(); ++i) subset_combos *= z;

    for (std::size_t cc = 0; cc < complement_combos; ++cc) {
      auto cvals = index_to_tuple(cc, z, complement_positions.size());
      fixed.assign(n, kNoValue);
      double weight_c = 1.0;
      for (std::size_t k = 0; k < complement_positions.size(); ++k) {
        fixed[complement_positions[k]] = cvals[k];
        weight_c *= scenario.p_z()[cvals[k]];
      }
      if (weight_c == 0.0) continue;
      for (std::size_t r = 0; r < scenario.r_size(); ++r) {
        double weight_r = weight_c * scenario.p_r()[r];
        if (weight_r == 0.0) continue;
        FiniteDistribution base = hypothesis_posterior(scenario, fixed, r);
        for (std::size_t sc = 0; sc < subset_combos; ++sc) {
          auto svals = index_to_tuple(sc, z, subset_positions.size());
          double weight_s = 1.0;
          for (std::size_t k = 0; k < subset_positions.size(); ++k) {
            fixed[subset_positions[k]] = svals[k];
            weight_s *= scenario.p_z()[svals[k]];
          }
          if (weight_s == 0.0) continue;
          std::size_t s_index = tuple_to_index(fixed, z);
          total += weight_r * weight_s * pair_value(scenario.row(s_index, r), base);
        }
        for (std::size_t k = 0; k < subset_positions.size(); ++k) {
          fixed[subset_positions[k]] = kNoValue;
        }
      }
    }
  }
  return total / static_cast<double>(masks.size());
}

}  // namespace

double full_dataset_wasserstein(const DiscreteScenario& scenario) {
  FiniteDistribution p_w = hypothesis_marginal(scenario);
  double total = 0.0;
  for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
    double ps = scenario.sample_prob(s);
    if (ps == 0.0) continue;
    total += ps * wasserstein1_exact(row_marginal_r(scenario, s), p_w, scenario.metric()).value;
  }
  return scenario.lipschitz() * total;
}

double single_letter_wasserstein(const DiscreteScenario& scenario) {
  double avg = single_letter_average(scenario, [&](const FiniteDistribution& a,
                                                   const FiniteDistribution& b) {
    return wasserstein1_exact(a, b, scenario.metric()).value;
  });
  return scenario.lipschitz() * avg;
}

double random_subset_wasserstein(const DiscreteScenario& scenario, std::size_t m,
                                 SubsetVariant variant) {
  const std::size_t n = scenario.n();
  if (variant == SubsetVariant::kSet) {
    double avg = subset_set_average(scenario, m, [&](const FiniteDistribution& a,
                                                     const FiniteDistribution& b) {
      return wasserstein1_exact(a, b, scenario.metric()).value;
    });
    return scenario.lipschitz() * avg;
  }

  // Per-sample variant: for i in J, compare P_{W|S_{J^c} u Z_i, R} against
  // P_{W|S_{J^c}, R}; the J^c assignment and the fresh Z_i are independent.
  auto masks = subsets_of_size(n, m);
  std::vector<std::size_t> fixed(n, kNoValue);
  double total = 0.0;
  for (std::size_t mask : masks) {
    std::vector<std::size_t> complement_positions;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) complement_positions.push_back(i);
    }
    const std::size_t c = complement_positions.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < c; ++i) combos *= scenario.z_size();

    for (std::size_t combo = 0; combo < combos; ++combo) {
      auto values = index_to_tuple(combo, scenario.z_size(), c);
      fixed.assign(n, kNoValue);
      double weight_cfg = 1.0;
      for (std::size_t k = 0; k < c; ++k) {
        fixed[complement_positions[k]] = values[k];
        weight_cfg *= scenario.p_z()[values[k]];
      }
      if (weight_cfg == 0.0) continue;
      for (std::size_t r = 0; r < scenario.r_size(); ++r) {
        double weight_r = weight_cfg * scenario.p_r()[r];
        if (weight_r == 0.0) continue;
        FiniteDistribution base = hypothesis_posterior(scenario, fixed, r);
        for (std::size_t i = 0; i < n; ++i) {
          if (!((mask >> i) & 1u)) continue;
          for (std::size_t z = 0; z < scenario.z_size(); ++z) {
            double pz = scenario.p_z()[z];
            if (pz == 0.0) continue;
            fixed[i] = z;
            total += weight_r * pz *
                     wasserstein1_exact(hypothesis_posterior(scenario, fixed, r), base,
                                        scenario.metric())
                         .value;
          }
          fixed[i] = kNoValue;
        }
      }
    }
  }
  double avg = total / static_cast<double>(masks.size());
  return scenario.lipschitz() * avg / static_cast<double>(m);
}

TvKlBound tv_kl_single_letter(const DiscreteScenario& scenario) {
  double range = scenario.loss().range();
  TvKlBound out;
  out.tv = range * single_letter_average(scenario, [](const FiniteDistribution& a,
                                                      const FiniteDistribution& b) {
    return total_variation(a, b);
  });
  out.kl = range * single_letter_average(scenario, [](const FiniteDistribution& a,
                                                      const FiniteDistribution& b) {
    return psi(kl_divergence(a, b));
  });
  return out;
}

TvKlBound tv_kl_random_subset(const DiscreteScenario& scenario) {
  double range = scenario.loss().range();
  TvKlBound out;
  out.tv = range * subset_set_average(scenario, 1, [](const FiniteDistribution& a,
                                                      const FiniteDistribution& b) {
    return total_variation(a, b);
  });
  out.kl = range * subset_set_average(scenario, 1, [](const FiniteDistribution& a,
                                                      const FiniteDistribution& b) {
    return psi(kl_divergence(a, b));
  });
  return out;
}

MiChainBounds mi_chain_bounds(const DiscreteScenario& scenario) {
  const double range = scenario.loss().range();
  const double n = static_cast<double>(scenario.n());
  double mi_ws = mi_hypothesis_dataset(scenario);

  MiChainBounds out;
  double per_sample = 0.0;
  for (std::size_t i = 0; i < scenario.n(); ++i) {
    per_sample += psi(mi_hypothesis_sample(scenario, i));
  }
  out.per_sample_jensen = range * per_sample / n;
  out.mi_over_n = range * psi(mi_ws / n);
  out.sqrt_form = std::sqrt(range * range * mi_ws / (2.0 * n));
  return out;
}

BackwardBounds backward_channel_bounds(const DiscreteScenario& scenario,
                                       const MetricSpace& z_metric) {
  if (z_metric.size() != scenario.z_size()) {
    throw DomainError("backward bounds: metric is not on the sample space");
  }
  const std::size_t n = scenario.n();
  const std::size_t z = scenario.z_size();
  const std::size_t space = scenario.sample_space_size();
  const double lipschitz_z = scenario.loss().lipschitz_in_z(z_metric);

  // Joint P(s, w) with R marginalized out.
  FiniteDistribution p_w = hypothesis_marginal(scenario);
  std::vector<double> joint(space * scenario.w_size(), 0.0);
  std::vector<double> p_s(space, 0.0);
  for (std::size_t s = 0; s < space; ++s) {
    p_s[s] = scenario.sample_prob(s);
    if (p_s[s] == 0.0) continue;
    FiniteDistribution row = row_marginal_r(scenario, s);
    for (std::size_t w = 0; w < scenario.w_size(); ++w) {
      joint[s * scenario.w_size() + w] = p_s[s] * row[w];
    }
  }

  // Metric on Z^n: the coordinate average of z_metric distances, under
  // which the empirical risk inherits the per-sample Lipschitz constant.
  std::vector<double> dist(space * space, 0.0);
  for (std::size_t s1 = 0; s1 < space; ++s1) {
    auto d1 = index_to_tuple(s1, z, n);
    for (std::size_t s2 = 0; s2 < space; ++s2) {
      auto d2 = index_to_tuple(s2, z, n);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += z_metric(d1[i], d2[i]);
      dist[s1 * space + s2] = sum / static_cast<double>(n);
    }
  }
  MetricSpace dataset_metric(space, std::move(dist));

  BackwardBounds out;
  FiniteDistribution p_s_dist{std::vector<double>(p_s)};
  for (std::size_t w = 0; w < scenario.w_size(); ++w) {
    if (p_w[w] == 0.0) continue;
    std::vector<double> backward(space, 0.0);
    for (std::size_t s = 0; s < space; ++s) {
      backward[s] = joint[s * scenario.w_size() + w] / p_w[w];
    }
    out.full += p_w[w] * wasserstein1_exact(FiniteDistribution(std::move(backward)), p_s_dist,
                                            dataset_metric)
                             .value;
  }
  out.full *= lipschitz_z;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < scenario.w_size(); ++w) {
      if (p_w[w] == 0.0) continue;
      std::vector<double> backward(z, 0.0);
      for (std::size_t s = 0; s < space; ++s) {
        auto digits = index_to_tuple(s, z, n);
        backward[digits[i]] += joint[s * scenario.w_size() + w];
      }
      for (double& v : backward) v /= p_w[w];
      out.single += p_w[w] * wasserstein1_exact(FiniteDistribution(std::move(backward)),
                                                scenario.p_z(), z_metric)
                                 .value;
    }
  }
  out.single *= lipschitz_z / static_cast<double>(n);
  return out;
}

FDivergenceBounds f_divergence_bounds(const DiscreteScenario& scenario) {
  const double range = scenario.loss().range();
  const std::size_t n = scenario.n();
  FiniteDistribution p_w = hypothesis_marginal(scenario);

  // Variance of the loss at a fixed sample under W' ~ P_W.
  auto loss_variance = [&](std::size_t z) {
    double mean = 0.0, second = 0.0;
    for (std::size_t w = 0; w < scenario.w_size(); ++w) {
      double l = scenario.loss()(w, z);
      mean += p_w[w] * l;
      second += p_w[w] * l * l;
    }
    return std::max(second - mean * mean, 0.0);
  };

  FDivergenceBounds out;
  std::vector<std::size_t> fixed(n, kNoValue);
  for (std::size_t i = 0; i < n; ++i) {
    double lautum_info = 0.0;
    fixed.assign(n, kNoValue);
    for (std::size_t z = 0; z < scenario.z_size(); ++z) {
      double pz = scenario.p_z()[z];
      if (pz == 0.0) continue;
      fixed[i] = z;
      FiniteDistribution posterior = hypothesis_posterior(scenario, fixed);

      lautum_info += pz * lautum_component(posterior, p_w);
      out.hellinger += pz * hellinger_tv_bound(hellinger(posterior, p_w));
      double chi2 = chi_squared(posterior, p_w);
      Chi2TvBounds conv = chi2_tv_bounds(chi2);
      out.chi2_via_kl += pz * conv.via_kl;
      out.chi2_basic += pz * conv.basic;
      // An infinite chi-squared makes the variational bound vacuous even at
      // zero variance (the finite-variance test functions no longer certify
      // the gap), so propagate the infinity instead of forming 0 * inf.
      out.chi2_variational +=
          pz * (std::isinf(chi2) ? chi2 : std::sqrt(loss_variance(z) * chi2));
    }
    out.lautum += psi(lautum_info);
  }

  const double dn = static_cast<double>(n);
  out.lautum *= range / dn;
  out.hellinger *= range / dn;
  out.chi2_via_kl *= range / dn;
  out.chi2_basic *= range / dn;
  out.chi2_variational /= dn;
  return out;
}

}  // namespace genbound
