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

#include "genbound/distribution.hpp"

using namespace genbound;

namespace {

std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t size) {
  std::vector<double> v(size);
  double total = 0.0;
  for (double& x : v) {
    x = -std::log1p(-static_cast<double>(rng() >> 11) * 0x1.0p-53);
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(FiniteDistribution({0.5, 0.6}), InvariantError);
  CHECK_THROWS_AS(FiniteDistribution({-0.1, 1.1}), InvariantError);
  CHECK_THROWS_AS(FiniteDistribution(std::vector<double>{}), InvariantError);
  CHECK(FiniteDistribution::uniform(4)[2] == doctest::Approx(0.25));
  CHECK(FiniteDistribution::point_mass(3, 1)[1] == 1.0);
  CHECK_THROWS_AS(FiniteDistribution::point_mass(3, 3), DomainError);
}

TEST_CASE("marginal of the uniform joint is uniform") {
  JointTable joint({2, 2}, {0.25, 0.25, 0.25, 0.25});
  for (std::size_t axis = 0; axis < 2; ++axis) {
    std::vector<std::size_t> axes{axis};
    JointTable m = joint.marginal(axes);
    REQUIRE(m.shape() == std::vector<std::size_t>{2});
    CHECK(m.probs()[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.probs()[1] == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("marginal of a product law recovers the factor") {
  std::vector<double> p{0.2, 0.3, 0.5};
  std::vector<double> q{0.7, 0.3};
  std::vector<double> joint_probs;
  for (double a : p) {
    for (double b : q) joint_probs.push_back(a * b);
  }
  JointTable joint({3, 2}, joint_probs);

  std::vector<std::size_t> second{1};
  JointTable m = joint.marginal(second);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m.probs()[i] == doctest::Approx(p[i]).epsilon(1e-12));
  }
  std::vector<std::size_t> bad{2};
  CHECK_THROWS_AS(joint.marginal(bad), DomainError);
}

TEST_CASE("marginal agrees with a naive double loop on a random 3x4 joint") {
  std::mt19937_64 rng(7);
  std::vector<double> probs = random_simplex(rng, 12);
  JointTable joint({3, 4}, probs);

  std::vector<double> row_sums(3, 0.0), col_sums(4, 0.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      row_sums[i] += probs[i * 4 + j];
      col_sums[j] += probs[i * 4 + j];
    }
  }

  std::vector<std::size_t> sum_cols{1};
  JointTable rows = joint.marginal(sum_cols);
  std::vector<std::size_t> sum_rows{0};
  JointTable cols = joint.marginal(sum_rows);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rows.probs()[i] == doctest::Approx(row_sums[i]));
  for (std::size_t j = 0; j < 4; ++j) CHECK(cols.probs()[j] == doctest::Approx(col_sums[j]));
}

TEST_CASE("axis order does not change a marginal") {
  std::mt19937_64 rng(11);
  std::vector<double> probs = random_simplex(rng, 24);
  JointTable joint({2, 3, 4}, probs);
  std::vector<std::size_t> ab{0, 2};
  std::vector<std::size_t> ba{2, 0};
  JointTable first = joint.marginal(ab);
  JointTable second = joint.marginal(ba);
  REQUIRE(first.shape() == second.shape());
  for (std::size_t i = 0; i < first.total_size(); ++i) {
    CHECK(first.probs()[i] == doctest::Approx(second.probs()[i]).epsilon(1e-14));
  }
}

TEST_CASE("conditioning an independent joint on the second coordinate gives the factor") {
  std::vector<double> p{0.2, 0.3, 0.5};
  std::vector<double> q{0.7, 0.3};
  std::vector<double> joint_probs;
  for (double a : p) {
    for (double b : q) joint_probs.push_back(a * b);
  }
  JointTable joint({3, 2}, joint_probs);
  for (std::size_t e = 0; e < 2; ++e) {
    JointTable cond = joint.condition({std::nullopt, e});
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(cond.probs()[i] == doctest::Approx(p[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("conditioning a deterministic joint gives a point mass") {
  // W = Z on a 3-symbol alphabet with weights (0.2, 0.5, 0.3).
  std::vector<double> probs(9, 0.0);
  probs[0 * 3 + 0] = 0.2;
  probs[1 * 3 + 1] = 0.5;
  probs[2 * 3 + 2] = 0.3;
  JointTable joint({3, 3}, probs);
  JointTable cond = joint.condition({std::nullopt, 1});
  CHECK(cond.probs()[0] == 0.0);
  CHECK(cond.probs()[1] == doctest::Approx(1.0));
  CHECK(cond.probs()[2] == 0.0);
}

TEST_CASE("conditioning matches brute-force renormalization on a random 4x4 joint") {
  std::mt19937_64 rng(23);
  std::vector<double> probs = random_simplex(rng, 16);
  JointTable joint({4, 4}, probs);
  for (std::size_t e = 0; e < 4; ++e) {
    JointTable cond = joint.condition({e, std::nullopt});
    double mass = 0.0;
    for (std::size_t j = 0; j < 4; ++j) mass += probs[e * 4 + j];
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(cond.probs()[j] == doctest::Approx(probs[e * 4 + j] / mass).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-probability evidence is unconditionable") {
  std::vector<double> probs(4, 0.0);
  probs[0] = 0.5;
  probs[1] = 0.5;  // second row empty
  JointTable joint({2, 2}, probs);
  CHECK_THROWS_WITH_AS(joint.condition({1, std::nullopt}),
                       doctest::Contains("unconditionable"), DomainError);
}

TEST_CASE("condition/marginal reconstruction") {
  // sum_e P(e) * condition(joint, e) recovers the marginal over the rest.
  std::mt19937_64 rng(37);
  std::vector<double> probs = random_simplex(rng, 24);
  JointTable joint({4, 6}, probs);

  std::vector<std::size_t> sum_second{1};
  JointTable p_e = joint.marginal(sum_second);   // law of the first axis
  std::vector<std::size_t> sum_first{0};
  JointTable target = joint.marginal(sum_first); // law of the second axis

  std::vector<double> reconstructed(6, 0.0);
  for (std::size_t e = 0; e < 4; ++e) {
    double pe = p_e.probs()[e];
    if (pe == 0.0) continue;
    JointTable cond = joint.condition({e, std::nullopt});
    for (std::size_t j = 0; j < 6; ++j) reconstructed[j] += pe * cond.probs()[j];
  }
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(reconstructed[j] == doctest::Approx(target.probs()[j]).epsilon(1e-12));
  }
}

TEST_CASE("kernel rows must share the output support") {
  std::vector<FiniteDistribution> rows;
  rows.push_back(FiniteDistribution::uniform(2));
  rows.push_back(FiniteDistribution::uniform(3));
  CHECK_THROWS_AS(ConditionalKernel(2, std::move(rows)), InvariantError);
}

TEST_CASE("tuple indexing round-trips") {
  std::vector<std::size_t> digits{2, 0, 1};
  std::size_t index = tuple_to_index(digits, 3);
  CHECK(index == 2 * 9 + 0 * 3 + 1);
  CHECK(index_to_tuple(index, 3, 3) == digits);
  CHECK_THROWS_AS(index_to_tuple(27, 3, 3), DomainError);
}
