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

#include "genbound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace genbound {

namespace {

// Slack for the exhaustive Lipschitz validation; loss tables assembled in
// floating point can miss the stated constant by a few ulps.
constexpr double kLipschitzSlack = 1e-9;

std::size_t checked_pow(std::size_t base, std::size_t exp, const char* what) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (result > kEnumerationGuard / base) {
      throw DomainError(std::string(what) + ": enumeration guard exceeded");
    }
    result *= base;
  }
  return result;
}

void check_lipschitz_in_w(const LossTable& loss, const MetricSpace& rho, double lipschitz) {
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) {
    throw InvariantError("scenario: Lipschitz constant must be finite and nonnegative");
  }
  double needed = loss.lipschitz_in_w(rho);
  if (needed > lipschitz + kLipschitzSlack) {
    throw InvariantError("scenario: Lipschitz invariant violated, loss requires constant " +
                         std::to_string(needed) + " but " + std::to_string(lipschitz) +
                         " was declared");
  }
}

FiniteDistribution marginalize_rows(const ConditionalKernel& kernel,
                                    std::span<const std::size_t> rows,
                                    std::span<const double> weights) {
  std::vector<double> acc(kernel.output_size(), 0.0);
  double mass = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const FiniteDistribution& row = kernel.row(rows[k]);
    double w = weights[k];
    if (w == 0.0) continue;
    mass += w;
    for (std::size_t o = 0; o < acc.size(); ++o) acc[o] += w * row[o];
  }
  if (mass <= 0.0) {
    throw DomainError("posterior: conditioning event has zero probability");
  }
  for (double& v : acc) v /= mass;
  return FiniteDistribution(std::move(acc));
}

}  // namespace

LossTable::LossTable(std::size_t w_size, std::size_t z_size, std::vector<double> values)
    : w_size_(w_size), z_size_(z_size), values_(std::move(values)) {
  if (w_size_ == 0 || z_size_ == 0) throw InvariantError("loss table: empty alphabet");
  if (values_.size() != w_size_ * z_size_) throw InvariantError("loss table: size mismatch");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvariantError("loss table: non-finite entry");
  }
  auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  min_ = *lo;
  max_ = *hi;
}

double LossTable::lipschitz_in_w(const MetricSpace& rho) const {
  if (rho.size() != w_size_) throw DomainError("loss table: metric is not on the hypothesis space");
  double needed = 0.0;
  for (std::size_t w = 0; w < w_size_; ++w) {
    for (std::size_t w2 = w + 1; w2 < w_size_; ++w2) {
      double d = rho(w, w2);
      for (std::size_t z = 0; z < z_size_; ++z) {
        double gap = std::abs((*this)(w, z) - (*this)(w2, z));
        if (gap > needed * d) needed = gap / d;
      }
    }
  }
  return needed;
}

double LossTable::lipschitz_in_z(const MetricSpace& rho) const {
  if (rho.size() != z_size_) throw DomainError("loss table: metric is not on the sample space");
  double needed = 0.0;
  for (std::size_t z = 0; z < z_size_; ++z) {
    for (std::size_t z2 = z + 1; z2 < z_size_; ++z2) {
      double d = rho(z, z2);
      for (std::size_t w = 0; w < w_size_; ++w) {
        double gap = std::abs((*this)(w, z) - (*this)(w, z2));
        if (gap > needed * d) needed = gap / d;
      }
    }
  }
  return needed;
}

DiscreteScenario::DiscreteScenario(std::size_t z_size, std::size_t n, FiniteDistribution p_z,
                                   ConditionalKernel kernel, LossTable loss, MetricSpace metric,
                                   double lipschitz, FiniteDistribution p_r)
    : z_size_(z_size),
      n_(n),
      p_z_(std::move(p_z)),
      p_r_(std::move(p_r)),
      kernel_(std::move(kernel)),
      loss_(std::move(loss)),
      metric_(std::move(metric)),
      lipschitz_(lipschitz) {
  if (n_ == 0) throw InvariantError("scenario: n must be positive");
  if (p_z_.size() != z_size_) throw InvariantError("scenario: p_z support mismatch");
  sample_space_size_ = checked_pow(z_size_, n_, "standard scenario");
  if (kernel_.input_size() != sample_space_size_ * p_r_.size()) {
    throw InvariantError("scenario: kernel input space must be Z^n x R");
  }
  if (loss_.w_size() != kernel_.output_size()) {
    throw InvariantError("scenario: loss table and kernel disagree on |W|");
  }
  if (loss_.z_size() != z_size_) throw InvariantError("scenario: loss table has wrong |Z|");
  if (metric_.size() != loss_.w_size()) {
    throw InvariantError("scenario: hypothesis metric has wrong support");
  }
  check_lipschitz_in_w(loss_, metric_, lipschitz_);
}

double DiscreteScenario::sample_prob(std::size_t s_index) const {
  auto digits = index_to_tuple(s_index, z_size_, n_);
  double p = 1.0;
  for (std::size_t d : digits) p *= p_z_[d];
  return p;
}

const FiniteDistribution& DiscreteScenario::row(std::size_t s_index, std::size_t r_index) const {
  return kernel_.row(s_index * p_r_.size() + r_index);
}

SupersampleScenario::SupersampleScenario(std::size_t z_size, std::size_t n,
                                         FiniteDistribution p_z, ConditionalKernel kernel,
                                         LossTable loss, MetricSpace metric, double lipschitz,
                                         FiniteDistribution p_r)
    : z_size_(z_size),
      n_(n),
      p_z_(std::move(p_z)),
      p_r_(std::move(p_r)),
      kernel_(std::move(kernel)),
      loss_(std::move(loss)),
      metric_(std::move(metric)),
      lipschitz_(lipschitz) {
  if (n_ == 0) throw InvariantError("supersample scenario: n must be positive");
  // Desk-scale guards: the exact engine enumerates |Z|^(2n) * 2^n states.
  if (n_ > 4 || z_size_ > 3) {
    throw DomainError("supersample scenario: guard requires n <= 4 and |Z| <= 3");
  }
  if (p_z_.size() != z_size_) throw InvariantError("supersample scenario: p_z support mismatch");
  supersample_space_size_ = checked_pow(z_size_, 2 * n_, "supersample scenario");
  mask_space_size_ = std::size_t{1} << n_;
  if (kernel_.input_size() != supersample_space_size_ * mask_space_size_ * p_r_.size()) {
    throw InvariantError("supersample scenario: kernel input space must be Z^(2n) x {0,1}^n x R");
  }
  if (loss_.w_size() != kernel_.output_size()) {
    throw InvariantError("supersample scenario: loss table and kernel disagree on |W|");
  }
  if (loss_.z_size() != z_size_) throw InvariantError("supersample scenario: loss table has wrong |Z|");
  if (metric_.size() != loss_.w_size()) {
    throw InvariantError("supersample scenario: hypothesis metric has wrong support");
  }
  check_lipschitz_in_w(loss_, metric_, lipschitz_);
}

double SupersampleScenario::supersample_prob(std::size_t stilde_index) const {
  auto digits = index_to_tuple(stilde_index, z_size_, 2 * n_);
  double p = 1.0;
  for (std::size_t d : digits) p *= p_z_[d];
  return p;
}

const FiniteDistribution& SupersampleScenario::row(std::size_t stilde_index, std::size_t u,
                                                   std::size_t r) const {
  return kernel_.row((stilde_index * mask_space_size_ + u) * p_r_.size() + r);
}

std::size_t SupersampleScenario::selected_symbol(std::size_t stilde_index, std::size_t u,
                                                 std::size_t i) const {
  auto digits = index_to_tuple(stilde_index, z_size_, 2 * n_);
  std::size_t u_i = (u >> i) & 1u;
  return digits[i + u_i * n_];
}

std::size_t SupersampleScenario::heldout_symbol(std::size_t stilde_index, std::size_t u,
                                                std::size_t i) const {
  auto digits = index_to_tuple(stilde_index, z_size_, 2 * n_);
  std::size_t u_i = (u >> i) & 1u;
  return digits[i + (1 - u_i) * n_];
}

double exact_gen_error(const DiscreteScenario& scenario) {
  const std::size_t w_size = scenario.w_size();
  const std::size_t n = scenario.n();
  const LossTable& loss = scenario.loss();

  std::vector<double> population_risk(w_size, 0.0);
  for (std::size_t w = 0; w < w_size; ++w) {
    for (std::size_t z = 0; z < scenario.z_size(); ++z) {
      population_risk[w] += scenario.p_z()[z] * loss(w, z);
    }
  }

  double gen = 0.0;
  for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
    double ps = scenario.sample_prob(s);
    if (ps == 0.0) continue;
    auto digits = index_to_tuple(s, scenario.z_size(), n);
    for (std::size_t r = 0; r < scenario.r_size(); ++r) {
      double weight = ps * scenario.p_r()[r];
      if (weight == 0.0) continue;
      const FiniteDistribution& row = scenario.row(s, r);
      for (std::size_t w = 0; w < w_size; ++w) {
        if (row[w] == 0.0) continue;
        double empirical = 0.0;
        for (std::size_t i = 0; i < n; ++i) empirical += loss(w, digits[i]);
        empirical /= static_cast<double>(n);
        gen += weight * row[w] * (population_risk[w] - empirical);
      }
    }
  }
  return gen;
}

double exact_empirical_gen_error(const SupersampleScenario& scenario) {
  const std::size_t n = scenario.n();
  const LossTable& loss = scenario.loss();
  const double mask_weight = 1.0 / static_cast<double>(scenario.mask_space_size());

  double gen = 0.0;
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    double pst = scenario.supersample_prob(st);
    if (pst == 0.0) continue;
    auto digits = index_to_tuple(st, scenario.z_size(), 2 * n);
    for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
      for (std::size_t r = 0; r < scenario.r_size(); ++r) {
        double weight = pst * mask_weight * scenario.p_r()[r];
        if (weight == 0.0) continue;
        const FiniteDistribution& row = scenario.row(st, u, r);
        for (std::size_t w = 0; w < scenario.w_size(); ++w) {
          if (row[w] == 0.0) continue;
          double diff = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            std::size_t u_i = (u >> i) & 1u;
            std::size_t selected = digits[i + u_i * n];
            std::size_t heldout = digits[i + (1 - u_i) * n];
            diff += loss(w, heldout) - loss(w, selected);
          }
          gen += weight * row[w] * diff / static_cast<double>(n);
        }
      }
    }
  }
  return gen;
}

DiscreteScenario induce_standard(const SupersampleScenario& scenario) {
  const std::size_t n = scenario.n();
  const std::size_t z = scenario.z_size();
  const std::size_t w_size = scenario.w_size();
  const std::size_t r_size = scenario.r_size();
  const std::size_t sample_space = [&] {
    std::size_t out = 1;
    for (std::size_t i = 0; i < n; ++i) out *= z;
    return out;
  }();
  const double mask_weight = 1.0 / static_cast<double>(scenario.mask_space_size());

  // Accumulate P(W, Stilde = consistent | S = s, R = r) and renormalize.
  std::vector<std::vector<double>> acc(sample_space * r_size,
                                       std::vector<double>(w_size, 0.0));
  std::vector<double> mass(sample_space * r_size, 0.0);

  std::vector<std::size_t> selected(n, 0);
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    double pst = scenario.supersample_prob(st);
    if (pst == 0.0) continue;
    auto digits = index_to_tuple(st, z, 2 * n);
    for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t u_i = (u >> i) & 1u;
        selected[i] = digits[i + u_i * n];
      }
      std::size_t s_index = tuple_to_index(selected, z);
      double weight = pst * mask_weight;
      for (std::size_t r = 0; r < r_size; ++r) {
        const FiniteDistribution& row = scenario.row(st, u, r);
        auto& bucket = acc[s_index * r_size + r];
        for (std::size_t o = 0; o < w_size; ++o) bucket[o] += weight * row[o];
        mass[s_index * r_size + r] += weight;
      }
    }
  }

  std::vector<FiniteDistribution> rows;
  rows.reserve(sample_space * r_size);
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (mass[k] <= 0.0) {
      // Zero-probability dataset (p_z has a zero); the row never matters.
      rows.push_back(FiniteDistribution::uniform(w_size));
      continue;
    }
    for (double& v : acc[k]) v /= mass[k];
    rows.push_back(FiniteDistribution(std::move(acc[k])));
  }

  return DiscreteScenario(z, n, scenario.p_z(),
                          ConditionalKernel(w_size, std::move(rows)), scenario.loss(),
                          scenario.metric(), scenario.lipschitz(), scenario.p_r());
}

SupersampleScenario lift_to_supersample(const DiscreteScenario& scenario) {
  const std::size_t n = scenario.n();
  const std::size_t z = scenario.z_size();
  const std::size_t r_size = scenario.r_size();
  const std::size_t mask_space = std::size_t{1} << n;
  std::size_t supersample_space = 1;
  for (std::size_t i = 0; i < 2 * n; ++i) supersample_space *= z;

  std::vector<FiniteDistribution> rows;
  rows.reserve(supersample_space * mask_space * r_size);
  std::vector<std::size_t> selected(n, 0);
  for (std::size_t st = 0; st < supersample_space; ++st) {
    auto digits = index_to_tuple(st, z, 2 * n);
    for (std::size_t u = 0; u < mask_space; ++u) {
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t u_i = (u >> i) & 1u;
        selected[i] = digits[i + u_i * n];
      }
      std::size_t s_index = tuple_to_index(selected, z);
      for (std::size_t r = 0; r < r_size; ++r) {
        rows.push_back(scenario.row(s_index, r));
      }
    }
  }

  return SupersampleScenario(z, n, scenario.p_z(),
                             ConditionalKernel(scenario.w_size(), std::move(rows)),
                             scenario.loss(), scenario.metric(), scenario.lipschitz(),
                             scenario.p_r());
}

FiniteDistribution hypothesis_marginal(const DiscreteScenario& scenario) {
  std::vector<std::size_t> fixed(scenario.n(), kNoValue);
  return hypothesis_posterior(scenario, fixed, kNoValue);
}

FiniteDistribution hypothesis_posterior(const DiscreteScenario& scenario,
                                        std::span<const std::size_t> fixed, std::size_t r) {
  if (fixed.size() != scenario.n()) throw DomainError("posterior: wrong number of positions");
  const std::size_t r_size = scenario.r_size();
  if (r != kNoValue && r >= r_size) throw DomainError("posterior: r out of range");

  std::vector<std::size_t> rows;
  std::vector<double> weights;
  rows.reserve(scenario.sample_space_size());
  weights.reserve(scenario.sample_space_size());
  for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
    auto digits = index_to_tuple(s, scenario.z_size(), scenario.n());
    double weight = 1.0;
    bool consistent = true;
    for (std::size_t i = 0; i < scenario.n() && consistent; ++i) {
      if (fixed[i] == kNoValue) {
        weight *= scenario.p_z()[digits[i]];
      } else if (fixed[i] != digits[i]) {
        consistent = false;
      }
    }
    if (!consistent || weight == 0.0) continue;
    if (r == kNoValue) {
      for (std::size_t ri = 0; ri < r_size; ++ri) {
        rows.push_back(s * r_size + ri);
        weights.push_back(weight * scenario.p_r()[ri]);
      }
    } else {
      rows.push_back(s * r_size + r);
      weights.push_back(weight);
    }
  }
  return marginalize_rows(scenario.kernel(), rows, weights);
}

FiniteDistribution rs_pair_posterior(const SupersampleScenario& scenario, std::size_t i,
                                     std::size_t a, std::size_t b, std::size_t u_i,
                                     std::size_t r) {
  const std::size_t n = scenario.n();
  if (i >= n) throw DomainError("rs posterior: position out of range");
  if (a >= scenario.z_size() || b >= scenario.z_size()) {
    throw DomainError("rs posterior: symbol out of range");
  }
  const std::size_t r_size = scenario.r_size();
  if (r != kNoValue && r >= r_size) throw DomainError("rs posterior: r out of range");

  std::vector<std::size_t> rows;
  std::vector<double> weights;
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    auto digits = index_to_tuple(st, scenario.z_size(), 2 * n);
    if (digits[i] != a || digits[i + n] != b) continue;
    double weight = 1.0;
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (k == i || k == i + n) continue;
      weight *= scenario.p_z()[digits[k]];
    }
    if (weight == 0.0) continue;
    for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
      if (u_i != kNoValue && ((u >> i) & 1u) != u_i) continue;
      for (std::size_t ri = 0; ri < r_size; ++ri) {
        if (r != kNoValue && ri != r) continue;
        double rw = (r == kNoValue) ? scenario.p_r()[ri] : 1.0;
        rows.push_back((st * scenario.mask_space_size() + u) * r_size + ri);
        weights.push_back(weight * rw);
      }
    }
  }
  return marginalize_rows(scenario.kernel(), rows, weights);
}

FiniteDistribution rs_mask_posterior(const SupersampleScenario& scenario,
                                     std::size_t stilde_index,
                                     std::span<const std::size_t> u_fixed, std::size_t r) {
  const std::size_t n = scenario.n();
  if (u_fixed.size() != n) throw DomainError("rs posterior: wrong mask length");
  const std::size_t r_size = scenario.r_size();
  if (r != kNoValue && r >= r_size) throw DomainError("rs posterior: r out of range");

  std::vector<std::size_t> rows;
  std::vector<double> weights;
  for (std::size_t u = 0; u < scenario.mask_space_size(); ++u) {
    bool consistent = true;
    for (std::size_t i = 0; i < n && consistent; ++i) {
      if (u_fixed[i] != kNoValue && ((u >> i) & 1u) != u_fixed[i]) consistent = false;
    }
    if (!consistent) continue;
    for (std::size_t ri = 0; ri < r_size; ++ri) {
      if (r != kNoValue && ri != r) continue;
      double rw = (r == kNoValue) ? scenario.p_r()[ri] : 1.0;
      rows.push_back((stilde_index * scenario.mask_space_size() + u) * r_size + ri);
      weights.push_back(rw);
    }
  }
  return marginalize_rows(scenario.kernel(), rows, weights);
}

}  // namespace genbound
