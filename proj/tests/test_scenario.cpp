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

#include "genbound/scenario.hpp"
#include "oracles.hpp"

using namespace genbound;

namespace {

std::mt19937_64 g_rng(5150);

double uniform() { return static_cast<double>(g_rng() >> 11) * 0x1.0p-53; }

FiniteDistribution random_dist(std::size_t size) {
  std::vector<double> v(size);
  double total = 0.0;
  for (double& x : v) {
    x = 0.05 - std::log1p(-uniform());
    total += x;
  }
  for (double& x : v) x /= total;
  return FiniteDistribution(std::move(v));
}

LossTable random_loss(std::size_t w, std::size_t z) {
  std::vector<double> values(w * z);
  for (double& v : values) v = uniform();
  return LossTable(w, z, std::move(values));
}

// One-sample binary memorizer: W = Z under the 0/1 loss.
DiscreteScenario memorizer() {
  std::vector<FiniteDistribution> rows;
  rows.push_back(FiniteDistribution::point_mass(2, 0));
  rows.push_back(FiniteDistribution::point_mass(2, 1));
  return DiscreteScenario(2, 1, FiniteDistribution::uniform(2),
                          ConditionalKernel(2, std::move(rows)),
                          LossTable(2, 2, {0.0, 1.0, 1.0, 0.0}), MetricSpace::discrete(2), 1.0);
}

DiscreteScenario random_standard(std::size_t z, std::size_t n, std::size_t w,
                                 std::size_t r = 1) {
  std::size_t rows_needed = r;
  for (std::size_t i = 0; i < n; ++i) rows_needed *= z;
  std::vector<FiniteDistribution> rows;
  for (std::size_t k = 0; k < rows_needed; ++k) rows.push_back(random_dist(w));
  LossTable loss = random_loss(w, z);
  MetricSpace metric = MetricSpace::discrete(w);
  double lipschitz = loss.lipschitz_in_w(metric);
  return DiscreteScenario(z, n, random_dist(z), ConditionalKernel(w, std::move(rows)),
                          std::move(loss), std::move(metric), lipschitz,
                          r == 1 ? FiniteDistribution::uniform(1) : random_dist(r));
}

SupersampleScenario random_supersample(std::size_t z, std::size_t n, std::size_t w) {
  std::size_t rows_needed = std::size_t{1} << n;
  for (std::size_t i = 0; i < 2 * n; ++i) rows_needed *= z;
  std::vector<FiniteDistribution> rows;
  for (std::size_t k = 0; k < rows_needed; ++k) rows.push_back(random_dist(w));
  LossTable loss = random_loss(w, z);
  MetricSpace metric = MetricSpace::discrete(w);
  double lipschitz = loss.lipschitz_in_w(metric);
  return SupersampleScenario(z, n, random_dist(z), ConditionalKernel(w, std::move(rows)),
                             std::move(loss), std::move(metric), lipschitz);
}

}  // namespace

TEST_CASE("construction validates the Lipschitz invariant exhaustively") {
  std::vector<FiniteDistribution> rows(2, FiniteDistribution::uniform(2));
  // 0/1 loss needs constant 1 under the discrete metric; declaring 0.5 fails.
  CHECK_THROWS_WITH_AS(
      DiscreteScenario(2, 1, FiniteDistribution::uniform(2), ConditionalKernel(2, rows),
                       LossTable(2, 2, {0.0, 1.0, 1.0, 0.0}), MetricSpace::discrete(2), 0.5),
      doctest::Contains("Lipschitz"), InvariantError);
  CHECK_NOTHROW(DiscreteScenario(2, 1, FiniteDistribution::uniform(2),
                                 ConditionalKernel(2, rows),
                                 LossTable(2, 2, {0.0, 1.0, 1.0, 0.0}),
                                 MetricSpace::discrete(2), 1.0));
}

TEST_CASE("enumeration guard rejects oversized sample spaces") {
  // 10^7 > 10^6 states: 10 symbols, 7 samples.
  std::vector<FiniteDistribution> rows(1, FiniteDistribution::uniform(2));
  CHECK_THROWS_WITH_AS(
      DiscreteScenario(10, 7, FiniteDistribution::uniform(10), ConditionalKernel(2, rows),
                       LossTable(2, 10, std::vector<double>(20, 0.0)),
                       MetricSpace::discrete(2), 0.0),
      doctest::Contains("guard"), DomainError);
}

TEST_CASE("a kernel that ignores the data generalizes perfectly") {
  FiniteDistribution fixed = random_dist(3);
  std::vector<FiniteDistribution> rows(9, fixed);
  LossTable loss = random_loss(3, 3);
  MetricSpace metric = MetricSpace::discrete(3);
  double lipschitz = loss.lipschitz_in_w(metric);
  DiscreteScenario scenario(3, 2, random_dist(3), ConditionalKernel(3, std::move(rows)),
                            std::move(loss), std::move(metric), lipschitz);
  CHECK(exact_gen_error(scenario) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("the binary memorizer has generalization error one half") {
  // Population risk 1/2 (a fresh sample differs half the time), empirical 0.
  CHECK(exact_gen_error(memorizer()) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("exact gen error matches a Monte Carlo oracle on a random scenario") {
  DiscreteScenario scenario = random_standard(3, 2, 4);
  double exact = exact_gen_error(scenario);
  auto mc = testing::gen_error_monte_carlo(scenario, 1'000'000, 99);
  CHECK(std::abs(exact - mc.estimate) <= 3.0 * mc.std_error);
}

TEST_CASE("gen error is invariant under symbol relabeling") {
  DiscreteScenario scenario = random_standard(3, 2, 4);
  double base = exact_gen_error(scenario);

  // Relabel W by a permutation: permute kernel columns, loss rows.
  std::vector<std::size_t> perm_w{2, 0, 3, 1};
  std::vector<FiniteDistribution> rows;
  for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
    const FiniteDistribution& row = scenario.row(s, 0);
    std::vector<double> permuted(4);
    for (std::size_t w = 0; w < 4; ++w) permuted[perm_w[w]] = row[w];
    rows.push_back(FiniteDistribution(std::move(permuted)));
  }
  std::vector<double> loss_values(4 * 3);
  for (std::size_t w = 0; w < 4; ++w) {
    for (std::size_t z = 0; z < 3; ++z) {
      loss_values[perm_w[w] * 3 + z] = scenario.loss()(w, z);
    }
  }
  DiscreteScenario relabeled(3, 2, scenario.p_z(), ConditionalKernel(4, std::move(rows)),
                             LossTable(4, 3, std::move(loss_values)), MetricSpace::discrete(4),
                             scenario.lipschitz());
  CHECK(exact_gen_error(relabeled) == doctest::Approx(base).epsilon(1e-13));

  // Relabel Z by a permutation: reindex kernel rows, p_z, loss columns.
  std::vector<std::size_t> perm_z{1, 2, 0};
  std::vector<double> pz(3);
  for (std::size_t z = 0; z < 3; ++z) pz[perm_z[z]] = scenario.p_z()[z];
  std::vector<FiniteDistribution> z_rows(scenario.sample_space_size(),
                                         FiniteDistribution::uniform(4));
  for (std::size_t s = 0; s < scenario.sample_space_size(); ++s) {
    auto digits = index_to_tuple(s, 3, 2);
    for (auto& d : digits) d = perm_z[d];
    z_rows[tuple_to_index(digits, 3)] = scenario.row(s, 0);
  }
  std::vector<double> z_loss(4 * 3);
  for (std::size_t w = 0; w < 4; ++w) {
    for (std::size_t z = 0; z < 3; ++z) z_loss[w * 3 + perm_z[z]] = scenario.loss()(w, z);
  }
  DiscreteScenario z_relabeled(3, 2, FiniteDistribution(std::move(pz)),
                               ConditionalKernel(4, std::move(z_rows)),
                               LossTable(4, 3, std::move(z_loss)), MetricSpace::discrete(4),
                               scenario.lipschitz());
  CHECK(exact_gen_error(z_relabeled) == doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("gen error is capped by the loss range") {
  for (int trial = 0; trial < 20; ++trial) {
    DiscreteScenario scenario = random_standard(2, 2, 3);
    CHECK(std::abs(exact_gen_error(scenario)) <= scenario.loss().range() + 1e-12);
  }
}

TEST_CASE("auxiliary variable enters the expectation") {
  // With R = {0, 1}, rows for r = 1 memorize while rows for r = 0 ignore
  // the data; the gen error interpolates.
  std::vector<FiniteDistribution> rows;
  rows.push_back(FiniteDistribution::uniform(2));        // s=0, r=0
  rows.push_back(FiniteDistribution::point_mass(2, 0));  // s=0, r=1
  rows.push_back(FiniteDistribution::uniform(2));        // s=1, r=0
  rows.push_back(FiniteDistribution::point_mass(2, 1));  // s=1, r=1
  FiniteDistribution p_r{{0.25, 0.75}};
  DiscreteScenario scenario(2, 1, FiniteDistribution::uniform(2),
                            ConditionalKernel(2, std::move(rows)),
                            LossTable(2, 2, {0.0, 1.0, 1.0, 0.0}), MetricSpace::discrete(2),
                            1.0, p_r);
  CHECK(exact_gen_error(scenario) == doctest::Approx(0.75 * 0.5).epsilon(1e-14));
}

TEST_CASE("a mask-independent supersample kernel has no empirical gap") {
  std::size_t rows_needed = (std::size_t{1} << 2) * 16;
  std::vector<FiniteDistribution> rows;
  FiniteDistribution fixed = random_dist(3);
  for (std::size_t k = 0; k < rows_needed; ++k) rows.push_back(fixed);
  LossTable loss = random_loss(3, 2);
  double lipschitz = loss.lipschitz_in_w(MetricSpace::discrete(3));
  SupersampleScenario scenario(2, 2, random_dist(2), ConditionalKernel(3, std::move(rows)),
                               std::move(loss), MetricSpace::discrete(3), lipschitz);
  CHECK(exact_empirical_gen_error(scenario) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("lifted memorizer reproduces the standard gen error") {
  DiscreteScenario std_scn = memorizer();
  SupersampleScenario lifted = lift_to_supersample(std_scn);
  CHECK(exact_empirical_gen_error(lifted) ==
        doctest::Approx(exact_gen_error(std_scn)).epsilon(1e-15));
}

TEST_CASE("empirical and standard gen errors coincide on lifted scenarios") {
  for (int trial = 0; trial < 25; ++trial) {
    DiscreteScenario std_scn = random_standard(2, 2, 4);
    SupersampleScenario lifted = lift_to_supersample(std_scn);
    double rs_value = exact_empirical_gen_error(lifted);
    DiscreteScenario induced = induce_standard(lifted);
    CHECK(std::abs(rs_value - exact_gen_error(induced)) <= 1e-12);
    // Inducing a lifted learner gives back the original kernel.
    CHECK(std::abs(rs_value - exact_gen_error(std_scn)) <= 1e-12);
    for (std::size_t s = 0; s < std_scn.sample_space_size(); ++s) {
      for (std::size_t w = 0; w < std_scn.w_size(); ++w) {
        CHECK(induced.row(s, 0)[w] == doctest::Approx(std_scn.row(s, 0)[w]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("supersample guard rejects oversized constructions") {
  std::vector<FiniteDistribution> rows(1, FiniteDistribution::uniform(2));
  CHECK_THROWS_AS(SupersampleScenario(2, 5, FiniteDistribution::uniform(2),
                                      ConditionalKernel(2, rows),
                                      LossTable(2, 2, {0.0, 1.0, 1.0, 0.0}),
                                      MetricSpace::discrete(2), 1.0),
                  DomainError);
}

TEST_CASE("posteriors average the kernel under the prior") {
  DiscreteScenario scenario = random_standard(3, 2, 4);
  FiniteDistribution p_w = hypothesis_marginal(scenario);

  // P_W as a direct sum over the joint.
  std::vector<double> direct(4, 0.0);
  for (std::size_t s = 0; s < 9; ++s) {
    for (std::size_t w = 0; w < 4; ++w) {
      direct[w] += scenario.sample_prob(s) * scenario.row(s, 0)[w];
    }
  }
  for (std::size_t w = 0; w < 4; ++w) CHECK(p_w[w] == doctest::Approx(direct[w]).epsilon(1e-13));

  // Mixing single-sample posteriors under p_z recovers the marginal.
  std::vector<std::size_t> fixed{kNoValue, kNoValue};
  std::vector<double> mixed(4, 0.0);
  for (std::size_t z = 0; z < 3; ++z) {
    fixed[0] = z;
    FiniteDistribution post = hypothesis_posterior(scenario, fixed);
    for (std::size_t w = 0; w < 4; ++w) mixed[w] += scenario.p_z()[z] * post[w];
  }
  for (std::size_t w = 0; w < 4; ++w) CHECK(p_w[w] == doctest::Approx(mixed[w]).epsilon(1e-13));
}

TEST_CASE("rs posteriors are consistent with the mask average") {
  SupersampleScenario scenario = random_supersample(2, 2, 3);
  // P_{W|stilde} equals the average of P_{W|stilde,u} over masks.
  std::vector<std::size_t> all_free{kNoValue, kNoValue};
  for (std::size_t st = 0; st < scenario.supersample_space_size(); ++st) {
    FiniteDistribution base = rs_mask_posterior(scenario, st, all_free);
    std::vector<double> avg(3, 0.0);
    for (std::size_t u = 0; u < 4; ++u) {
      for (std::size_t w = 0; w < 3; ++w) avg[w] += 0.25 * scenario.row(st, u, 0)[w];
    }
    for (std::size_t w = 0; w < 3; ++w) CHECK(base[w] == doctest::Approx(avg[w]).epsilon(1e-13));
  }
}
