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

#include "genbound/bounds_subsample.hpp"

#include <cmath>
#include <vector>

#include "genbound/divergence.hpp"
#include "genbound/transport.hpp"

namespace genbound {

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kKlLemmaSlack = 1e-12;

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

std::vector<std::size_t> subsets_of_size(std::size_t n, std::size_t m) {
  if (m == 0 || m > n) throw DomainError("rs random subset: size out of range");
  std::vector<std::size_t> masks;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == m) masks.push_back(mask);
  }
  return masks;
}

// E over (Stilde_i, U_i) of pair_value(P_{W|Stilde_i,U_i}, P_{W|Stilde_i}),
// averaged over i.
template <typename F>
double rs_single_letter_average(const SupersampleScenario& scenario, F&& pair_value) {
  double total = 0.0;
  for (std::size_t i = 0; i < scenario.n(); ++i) {
    for (std::size_t a = 0; a < scenario.z_size(); ++a) {
      for (std::size_t b = 0; b < scenario.z_size(); ++b) {
        double w = scenario.p_z()[a] * scenario.p_z()[b];
        if (w == 0.0) continue;
        FiniteDistribution base = rs_pair_posterior(scenario, i, a, b, kNoValue);
        for (std::size_t v = 0; v < 2; ++v) {
          total += w * 0.5 * pair_value(rs_pair_posterior(scenario, i, a, b, v), base);
        }
      }
    }
  }
  return total / static_cast<double>(scenario.n());
}

// E over (J, Stilde, U, R) of pair_value(P_{W|Stilde,U,R}, P_{W|Stilde,U_{J^c},R}).
template <typename F>
double rs_subset_set_average(const SupersampleScenario& scenario, std::size_t m, F&& pair_value) {
  const std::size_t n = scenario.n();
  auto masks = subsets_of_size(n, m);
  const double uw = 1.0 / static_cast<double>(scenario.mask_space_size());
  std::vector<std::size_t> u_fixed(n, kNoValue);
  double total = 0.0;
  for (std::size_t mask : masks) {
    for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
      double pst = scenario.supersample_prob(st);
      if (pst == 0.0) continue;
      // Enumerate U as (U_{J^c}, U_J); the base posterior is shared across
      // the 2^m completions of U_J.
      for (std::size_t u_keep = 0; u_keep < scenario.mask_space_size(); ++u_keep) {
        bool canonical = true;
        for (std::size_t i = 0; i < n && canonical; ++i) {
          if (((mask >> i) & 1u) && ((u_keep >> i) & 1u)) canonical = false;
        }
        if (!canonical) continue;  // J bits must be zero in the J^c part
        for (std::size_t i = 0; i < n; ++i) {
          u_fixed[i] = (mask >> i) & 1u ? kNoValue : ((u_keep >> i) & 1u);
        }
        for (std::size_t r = 0; r < scenario.r_size(); ++r) {
          double weight_r = pst * scenario.p_r()[r];
          if (weight_r == 0.0) continue;
          FiniteDistribution base = rs_mask_posterior(scenario, st, u_fixed, r);
          // All masks u agreeing with u_keep outside J.
          for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
            if ((u & ~mask) != u_keep) continue;
            total += weight_r * uw * pair_value(scenario.row(st, u, r), base);
          }
        }
      }
    }
  }
  return total / static_cast<double>(masks.size());
}

}  // namespace

double rs_full_dataset(const SupersampleScenario& scenario) {
  const std::size_t n = scenario.n();
  std::vector<std::size_t> all_free(n, kNoValue);
  const double uw = 1.0 / static_cast<double>(scenario.mask_space_size());
  double total = 0.0;
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    double pst = scenario.supersample_prob(st);
    if (pst == 0.0) continue;
    FiniteDistribution base = rs_mask_posterior(scenario, st, all_free);
    for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
      total += pst * uw *
               wasserstein1_exact(rs_row_marginal_r(scenario, st, u), base, scenario.metric())
                   .value;
    }
  }
  return 2.0 * scenario.lipschitz() * total;
}

double rs_single_letter(const SupersampleScenario& scenario) {
  double avg = rs_single_letter_average(scenario, [&](const FiniteDistribution& a,
                                                      const FiniteDistribution& b) {
    return wasserstein1_exact(a, b, scenario.metric()).value;
  });
  return 2.0 * scenario.lipschitz() * avg;
}

TvKlBound rs_tv_kl_single_letter(const SupersampleScenario& scenario) {
  const double range = scenario.loss().range();
  TvKlBound out;
  out.tv = 2.0 * range *
           rs_single_letter_average(scenario, [](const FiniteDistribution& a,
                                                 const FiniteDistribution& b) {
             return total_variation(a, b);
           });
  out.kl = range * rs_single_letter_average(scenario, [](const FiniteDistribution& a,
                                                         const FiniteDistribution& b) {
    double kl = kl_divergence(a, b);
    if (kl > kLog2 + kKlLemmaSlack) {
      throw InvariantError("rs bounds: per-letter KL exceeds log 2");
    }
    return std::sqrt(2.0 * kl);
  });
  return out;
}

double rs_random_subset(const SupersampleScenario& scenario, std::size_t m,
                        SubsetVariant variant) {
  const std::size_t n = scenario.n();
  if (variant == SubsetVariant::kSet) {
    double avg = rs_subset_set_average(scenario, m, [&](const FiniteDistribution& a,
                                                        const FiniteDistribution& b) {
      return wasserstein1_exact(a, b, scenario.metric()).value;
    });
    return 2.0 * scenario.lipschitz() * avg;
  }

  // Per-sample variant: reveal one identity bit U_i, i in J, on top of U_{J^c}.
  auto masks = subsets_of_size(n, m);
  const double uw = 1.0 / static_cast<double>(scenario.mask_space_size());
  std::vector<std::size_t> u_fixed(n, kNoValue);
  double total = 0.0;
  for (std::size_t mask : masks) {
    for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
      double pst = scenario.supersample_prob(st);
      if (pst == 0.0) continue;
      for (std::size_t u_keep = 0; u_keep < scenario.mask_space_size(); ++u_keep) {
        bool canonical = true;
        for (std::size_t i = 0; i < n && canonical; ++i) {
          if (((mask >> i) & 1u) && ((u_keep >> i) & 1u)) canonical = false;
        }
        if (!canonical) continue;
        for (std::size_t i = 0; i < n; ++i) {
          u_fixed[i] = (mask >> i) & 1u ? kNoValue : ((u_keep >> i) & 1u);
        }
        // Weight of the U_{J^c} assignment: 2^-(n-m).
        double weight_keep = uw * static_cast<double>(std::size_t{1} << m);
        for (std::size_t r = 0; r < scenario.r_size(); ++r) {
          double weight_r = pst * weight_keep * scenario.p_r()[r];
          if (weight_r == 0.0) continue;
          FiniteDistribution base = rs_mask_posterior(scenario, st, u_fixed, r);
          for (std::size_t i = 0; i < n; ++i) {
            if (!((mask >> i) & 1u)) continue;
            for (std::size_t v = 0; v < 2; ++v) {
              u_fixed[i] = v;
              total += weight_r * 0.5 *
                       wasserstein1_exact(rs_mask_posterior(scenario, st, u_fixed, r), base,
                                          scenario.metric())
                           .value;
            }
            u_fixed[i] = kNoValue;
          }
        }
      }
    }
  }
  double avg = total / static_cast<double>(masks.size());
  return 2.0 * scenario.lipschitz() * avg / static_cast<double>(m);
}

TvKlBound rs_tv_kl_random_subset(const SupersampleScenario& scenario) {
  const double range = scenario.loss().range();
  TvKlBound out;
  out.tv = 2.0 * range *
           rs_subset_set_average(scenario, 1, [](const FiniteDistribution& a,
                                                 const FiniteDistribution& b) {
             return total_variation(a, b);
           });
  out.kl = range * rs_subset_set_average(scenario, 1, [](const FiniteDistribution& a,
                                                         const FiniteDistribution& b) {
    double kl = kl_divergence(a, b);
    if (kl > kLog2 + kKlLemmaSlack) {
      throw InvariantError("rs bounds: leave-one-bit-out KL exceeds log 2");
    }
    return std::sqrt(2.0 * kl);
  });
  return out;
}

double kl_log2_lemma_check(const ConditionalKernel& kernel, std::size_t bernoulli_bits) {
  const std::size_t mask_space = std::size_t{1} << bernoulli_bits;
  if (kernel.input_size() % mask_space != 0) {
    throw DomainError("kl_log2_lemma_check: input space is not A x {0,1}^k");
  }
  const std::size_t a_size = kernel.input_size() / mask_space;
  const double uw = 1.0 / static_cast<double>(mask_space);

  double worst = 0.0;
  for (std::size_t a = 0; a < a_size; ++a) {
    std::vector<double> acc(kernel.output_size(), 0.0);
    for (std::size_t b = 0; b < mask_space; ++b) {
      const FiniteDistribution& row = kernel.row(a * mask_space + b);
      for (std::size_t o = 0; o < acc.size(); ++o) acc[o] += uw * row[o];
    }
    FiniteDistribution base{std::move(acc)};
    for (std::size_t b = 0; b < mask_space; ++b) {
      worst = std::max(worst, kl_divergence(kernel.row(a * mask_space + b), base));
    }
  }
  if (worst > static_cast<double>(bernoulli_bits) * kLog2 + kKlLemmaSlack) {
    throw InvariantError("kl_log2_lemma_check: KL exceeds k log 2");
  }
  return worst;
}

}  // namespace genbound
