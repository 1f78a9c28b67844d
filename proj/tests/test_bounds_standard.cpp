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

#include <doctest.h>

#include <cmath>
#include <random>

#include "genbound/bounds_standard.hpp"
#include "genbound/divergence.hpp"
#include "genbound/information.hpp"
#include "genbound/transport.hpp"

using namespace genbound;

namespace {

std::mt19937_64 g_rng(31337);

double uniform() { return static_cast<double>(g_rng() >> 11) * 0x1.0p-53; }

FiniteDistribution random_dist(std::size_t size) {
  std::vector<double> v(size);
  double total = 0.0;
  for (double& x : v) {
    x = 0.02 - std::log1p(-uniform());
    total += x;
  }
  for (double& x : v) x /= total;
  return FiniteDistribution(std::move(v));
}

DiscreteScenario memorizer() {
  std::vector<FiniteDistribution> rows;
  rows.push_back(FiniteDistribution::point_mass(2, 0));
  rows.push_back(FiniteDistribution::point_mass(2, 1));
  return DiscreteScenario(2, 1, FiniteDistribution::uniform(2),
                          ConditionalKernel(2, std::move(rows)),
                          LossTable(2, 2, {0.0, 1.0, 1.0, 0.0}), MetricSpace::discrete(2), 1.0);
}

DiscreteScenario data_independent() {
  FiniteDistribution fixed = random_dist(4);
  std::vector<FiniteDistribution> rows(9, fixed);
  std::vector<double> loss_values(4 * 3);
  for (double& v : loss_values) v = uniform();
  LossTable loss(4, 3, std::move(loss_values));
  MetricSpace metric = MetricSpace::discrete(4);
  double lipschitz = loss.lipschitz_in_w(metric);
  return DiscreteScenario(3, 2, random_dist(3), ConditionalKernel(4, std::move(rows)),
                          std::move(loss), std::move(metric), lipschitz);
}

DiscreteScenario random_scenario(std::size_t z = 3, std::size_t n = 2, std::size_t w = 4,
                                 std::size_t r = 1, bool sharp = false) {
  std::size_t rows_needed = r;
  for (std::size_t i = 0; i < n; ++i) rows_needed *= z;
  std::vector<FiniteDistribution> rows;
  for (std::size_t k = 0; k < rows_needed; ++k) {
    if (sharp) {
      std::vector<double> v(w, 0.01 / static_cast<double>(w - 1));
      v[static_cast<std::size_t>(g_rng() % w)] = 0.99;
      double total = 0.0;
      for (double x : v) total += x;
      for (double& x : v) x /= total;
      rows.push_back(FiniteDistribution(std::move(v)));
    } else {
      rows.push_back(random_dist(w));
    }
  }
  std::vector<double> loss_values(w * z);
  for (double& v : loss_values) v = uniform();
  LossTable loss(w, z, std::move(loss_values));
  MetricSpace metric = MetricSpace::discrete(w);
  double lipschitz = loss.lipschitz_in_w(metric);
  return DiscreteScenario(z, n, random_dist(z), ConditionalKernel(w, std::move(rows)),
                          std::move(loss), std::move(metric), lipschitz,
                          r == 1 ? FiniteDistribution::uniform(1) : random_dist(r));
}

}  // namespace

TEST_CASE("all bounds vanish for a data-independent learner") {
  DiscreteScenario scenario = data_independent();
  CHECK(full_dataset_wasserstein(scenario) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(single_letter_wasserstein(scenario) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(random_subset_wasserstein(scenario, 1, SubsetVariant::kSet) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(random_subset_wasserstein(scenario, 2, SubsetVariant::kPerSample) ==
        doctest::Approx(0.0).epsilon(1e-12));
  TvKlBound tv_kl = tv_kl_single_letter(scenario);
  CHECK(tv_kl.tv == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tv_kl.kl == doctest::Approx(0.0).epsilon(1e-7));  // Psi has a sqrt cusp at 0
  MiChainBounds chain = mi_chain_bounds(scenario);
  CHECK(chain.per_sample_jensen == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(chain.mi_over_n == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(chain.sqrt_form == doctest::Approx(0.0).epsilon(1e-7));
  BackwardBounds backward = backward_channel_bounds(scenario, MetricSpace::discrete(3));
  CHECK(backward.full == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(backward.single == doctest::Approx(0.0).epsilon(1e-12));
  FDivergenceBounds fdiv = f_divergence_bounds(scenario);
  CHECK(fdiv.lautum == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(fdiv.hellinger == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(fdiv.chi2_via_kl == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(fdiv.chi2_basic == doctest::Approx(0.0).epsilon(1e-7));
  CHECK(fdiv.chi2_variational == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("memorizer: the full-dataset bound is tight at one half") {
  DiscreteScenario scenario = memorizer();
  double gen = exact_gen_error(scenario);
  CHECK(gen == doctest::Approx(0.5).epsilon(1e-15));
  // Brute force: P_{W|s} is a point mass, P_W uniform; TV = 1/2 per row.
  CHECK(full_dataset_wasserstein(scenario) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(single_letter_wasserstein(scenario) == doctest::Approx(0.5).epsilon(1e-12));
  TvKlBound tv_kl = tv_kl_single_letter(scenario);
  CHECK(tv_kl.tv == doctest::Approx(0.5).epsilon(1e-12));
  // Psi(KL(point mass || uniform)) = Psi(log 2) on each branch.
  CHECK(tv_kl.kl == doctest::Approx(psi(std::log(2.0))).epsilon(1e-12));
  // At n = 1 the leave-one-out condition is empty, so the subset forms
  // coincide with the single-letter ones.
  TvKlBound loo = tv_kl_random_subset(scenario);
  CHECK(loo.tv == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(loo.kl == doctest::Approx(psi(std::log(2.0))).epsilon(1e-12));
  CHECK(random_subset_wasserstein(scenario, 1, SubsetVariant::kSet) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(random_subset_wasserstein(scenario, 1, SubsetVariant::kPerSample) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // The n = 1 memorizer reveals everything: I(W;S) = log 2 and the chain
  // collapses to sqrt(log(2) / 2) at every stage.
  MiChainBounds chain = mi_chain_bounds(scenario);
  CHECK(mi_hypothesis_dataset(scenario) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(chain.per_sample_jensen == doctest::Approx(std::sqrt(std::log(2.0) / 2.0)).epsilon(1e-12));
  CHECK(chain.mi_over_n == doctest::Approx(chain.per_sample_jensen).epsilon(1e-12));
  CHECK(chain.sqrt_form == doctest::Approx(chain.per_sample_jensen).epsilon(1e-12));

  // Backward channel under the discrete sample metric is symmetric here.
  BackwardBounds backward = backward_channel_bounds(scenario, MetricSpace::discrete(2));
  CHECK(backward.full == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(backward.single == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("memorizer: f-divergence bounds take their closed-form values") {
  DiscreteScenario scenario = memorizer();
  FDivergenceBounds fdiv = f_divergence_bounds(scenario);
  // P_{W|z} = point mass, P_W = uniform: H^2 = 2 - sqrt(2), chi2 = 1,
  // lautum information = +inf (so Psi caps at 1).
  double h = std::sqrt(2.0 - std::sqrt(2.0));
  CHECK(fdiv.lautum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fdiv.hellinger == doctest::Approx(0.5 * h * std::sqrt(4.0 - h * h)).epsilon(1e-12));
  CHECK(fdiv.chi2_via_kl == doctest::Approx(std::sqrt(std::log(2.0) / 2.0)).epsilon(1e-12));
  CHECK(fdiv.chi2_basic == doctest::Approx(0.5).epsilon(1e-12));
  // Var[l(W', z)] = 1/4 under the uniform prior, chi2 = 1.
  CHECK(fdiv.chi2_variational == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("subset bound at m = n collapses to the full-dataset bound") {
  for (int trial = 0; trial < 10; ++trial) {
    DiscreteScenario scenario = random_scenario();
    CHECK(random_subset_wasserstein(scenario, scenario.n(), SubsetVariant::kSet) ==
          doctest::Approx(full_dataset_wasserstein(scenario)).epsilon(1e-10));
  }
  DiscreteScenario scenario = random_scenario();
  CHECK_THROWS_AS(random_subset_wasserstein(scenario, 0, SubsetVariant::kSet), DomainError);
  CHECK_THROWS_AS(random_subset_wasserstein(scenario, 3, SubsetVariant::kSet), DomainError);
}

TEST_CASE("validity and orderings on random scenarios") {
  for (int trial = 0; trial < 30; ++trial) {
    bool sharp = trial % 2 == 0;
    DiscreteScenario scenario = random_scenario(3, 2, 4, 1, sharp);
    double gen = std::abs(exact_gen_error(scenario));

    double full = full_dataset_wasserstein(scenario);
    double single = single_letter_wasserstein(scenario);
    TvKlBound tv_kl = tv_kl_single_letter(scenario);
    TvKlBound tv_kl_subset = tv_kl_random_subset(scenario);
    MiChainBounds chain = mi_chain_bounds(scenario);
    FDivergenceBounds fdiv = f_divergence_bounds(scenario);
    BackwardBounds backward = backward_channel_bounds(scenario, MetricSpace::discrete(3));

    CHECK(full >= gen - 1e-9);
    CHECK(single >= gen - 1e-9);
    CHECK(tv_kl.tv >= gen - 1e-9);
    CHECK(tv_kl.kl >= tv_kl.tv - 1e-12);
    CHECK(tv_kl.kl <= scenario.loss().range() + 1e-12);
    CHECK(tv_kl_subset.tv >= gen - 1e-9);
    CHECK(tv_kl_subset.kl >= tv_kl_subset.tv - 1e-12);
    CHECK(backward.full >= gen - 1e-9);
    CHECK(backward.single >= gen - 1e-9);
    CHECK(fdiv.lautum >= gen - 1e-9);
    CHECK(fdiv.hellinger >= gen - 1e-9);
    CHECK(fdiv.chi2_via_kl >= gen - 1e-9);
    CHECK(fdiv.chi2_basic >= gen - 1e-9);
    CHECK(fdiv.chi2_variational >= gen - 1e-9);
    // Popoviciu keeps the variational form below the basic one.
    CHECK(fdiv.chi2_variational <= fdiv.chi2_basic + 1e-12);

    // Orderings: the single-letter bound sits below the full-dataset and subset forms.
    CHECK(single <= full + 1e-9);
    for (std::size_t m = 1; m <= 2; ++m) {
      double subset = random_subset_wasserstein(scenario, m, SubsetVariant::kSet);
      CHECK(subset >= gen - 1e-9);
      CHECK(single <= subset + 1e-9);
      CHECK(subset <= 2.0 * full + 1e-9);
      CHECK(random_subset_wasserstein(scenario, m, SubsetVariant::kPerSample) >= gen - 1e-9);
    }

    // The Eq.-(2)-style chain is nondecreasing left to right.
    CHECK(tv_kl.tv <= chain.per_sample_jensen + 1e-12);
    CHECK(chain.per_sample_jensen <= chain.mi_over_n + 1e-12);
    CHECK(chain.mi_over_n <= chain.sqrt_form + 1e-12);
  }
}

TEST_CASE("discrete metric makes the full bound a scaled TV average") {
  for (int trial = 0; trial < 20; ++trial) {
    DiscreteScenario scenario = random_scenario();
    // Under the discrete metric W1 = TV, so the full-dataset transport
    // bound equals L * E[TV(P_{W|S}, P_W)] for whatever constant the
    // scenario declares; with L = b - a it is exactly the TV bound built
    // from the loss range.
    FiniteDistribution p_w = hypothesis_marginal(scenario);
    double tv_average = 0.0;
    for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
      tv_average += scenario.sample_prob(s) * total_variation(scenario.row(s, 0), p_w);
    }
    CHECK(std::abs(full_dataset_wasserstein(scenario) -
                   scenario.lipschitz() * tv_average) <= 1e-9);

    DiscreteScenario range_scaled(scenario.z_size(), scenario.n(), scenario.p_z(),
                                  scenario.kernel(), scenario.loss(), scenario.metric(),
                                  scenario.loss().range());
    CHECK(std::abs(full_dataset_wasserstein(range_scaled) -
                   scenario.loss().range() * tv_average) <= 1e-9);
  }
}

TEST_CASE("bounds with an auxiliary variable stay valid") {
  for (int trial = 0; trial < 10; ++trial) {
    DiscreteScenario scenario = random_scenario(2, 2, 3, 2);
    double gen = std::abs(exact_gen_error(scenario));
    CHECK(random_subset_wasserstein(scenario, 1, SubsetVariant::kSet) >= gen - 1e-9);
    CHECK(random_subset_wasserstein(scenario, 1, SubsetVariant::kPerSample) >= gen - 1e-9);
    TvKlBound subset = tv_kl_random_subset(scenario);
    CHECK(subset.tv >= gen - 1e-9);
    CHECK(subset.kl >= subset.tv - 1e-12);
  }
}

TEST_CASE("backward bounds under a nontrivial sample metric") {
  // Loss l(w, z) = |w - z| on a 3-point line; Lipschitz in z with constant
  // 1 under the line metric, so the tightest constant should be found.
  std::vector<double> loss_values;
  for (int w = 0; w < 3; ++w) {
    for (int z = 0; z < 3; ++z) loss_values.push_back(std::abs(w - z) * 0.5);
  }
  LossTable loss(3, 3, std::move(loss_values));
  MetricSpace line(3, {0.0, 0.5, 1.0, 0.5, 0.0, 0.5, 1.0, 0.5, 0.0});
  CHECK(loss.lipschitz_in_z(line) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<FiniteDistribution> rows;
  for (std::size_t s = 0; s < 9; ++s) rows.push_back(random_dist(3));
  DiscreteScenario scenario(3, 2, random_dist(3), ConditionalKernel(3, std::move(rows)),
                            loss, MetricSpace::discrete(3), loss.range());
  double gen = std::abs(exact_gen_error(scenario));
  BackwardBounds backward = backward_channel_bounds(scenario, line);
  CHECK(backward.full >= gen - 1e-9);
  CHECK(backward.single >= gen - 1e-9);
}

TEST_CASE("chi-squared crossover region on synthetic pairs") {
  // With Var = L^2/4 the variational bound overtakes the via-KL bound
  // exactly where x/2 = log(1+x), near 2.51.
  auto variational = [](double x) { return std::sqrt(0.25 * x); };
  auto via_kl = [](double x) { return chi2_tv_bounds(x).via_kl; };
  CHECK(variational(2.4) < via_kl(2.4));
  CHECK(variational(2.6) > via_kl(2.6));
}
