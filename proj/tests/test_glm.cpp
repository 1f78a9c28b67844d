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
#include <limits>
#include <string>

#include "genbound/errors.hpp"
#include "genbound/glm.hpp"

using namespace genbound;

namespace {

// Frozen 50-digit references.
constexpr double kGammaRatio1 = 0.5641895835477562869480795;    // 1/sqrt(pi)
constexpr double kGammaRatio2 = 0.8862269254527580136490837;    // sqrt(pi)/2
constexpr double kGammaRatio250 = 11.16916516570233762480853;
constexpr double kGen10 = 0.079888630582352446867;
constexpr double kFull10 = 0.35682482323055422291;
constexpr double kSingle10 = 0.11141123268197032891;
constexpr double kSubset10 = 0.11283791670955125739;
constexpr double kIsmi10 = 0.34043584891078808264;

GlmConfig config(int d, double sigma2 = 1.0) {
  GlmConfig cfg;
  cfg.d = d;
  cfg.sigma2 = sigma2;
  cfg.seed = 20260810;
  return cfg;
}

}  // namespace

TEST_CASE("gamma ratio via lgamma") {
  CHECK(gamma_half_ratio(1.0) == doctest::Approx(kGammaRatio1).epsilon(1e-14));
  CHECK(gamma_half_ratio(2.0) == doctest::Approx(kGammaRatio2).epsilon(1e-14));
  CHECK(gamma_half_ratio(250.0) == doctest::Approx(kGammaRatio250).epsilon(1e-10));
  CHECK(std::isfinite(gamma_half_ratio(10000.0)));
  // Asymptotically sqrt(d/2).
  CHECK(gamma_half_ratio(10000.0) == doctest::Approx(std::sqrt(5000.0)).epsilon(1e-4));
  CHECK_THROWS_AS(gamma_half_ratio(0.0), DomainError);
}

TEST_CASE("closed forms at d = 1, sigma2 = 1, n = 10") {
  GlmConfig cfg = config(1);
  CHECK(glm_exact_gen(cfg, 10) == doctest::Approx(kGen10).epsilon(1e-13));
  CHECK(glm_full_bound(cfg, 10) == doctest::Approx(kFull10).epsilon(1e-13));
  CHECK(glm_single_letter_bound(cfg, 10) == doctest::Approx(kSingle10).epsilon(1e-13));
  CHECK(glm_random_subset_bound(cfg, 10) == doctest::Approx(kSubset10).epsilon(1e-13));
  CHECK(glm_ismi_bound(cfg, 10) == doctest::Approx(kIsmi10).epsilon(1e-13));
}

TEST_CASE("domain guards") {
  GlmConfig cfg = config(1);
  CHECK_THROWS_AS(glm_exact_gen(cfg, 1), DomainError);
  CHECK_THROWS_AS(glm_ismi_bound(cfg, 1), DomainError);
  CHECK_THROWS_AS(glm_ismi_bound(config(2), 10), DomainError);
  GlmConfig bad = config(1, -1.0);
  CHECK_THROWS_AS(glm_exact_gen(bad, 10), DomainError);
}

TEST_CASE("paper caps on the closed forms") {
  for (int d : {1, 2, 250}) {
    GlmConfig cfg = config(d);
    for (int n : {2, 5, 10, 100, 1000}) {
      double cap = std::sqrt(2.0 * cfg.sigma2 * d);
      CHECK(glm_exact_gen(cfg, n) <= cap / n + 1e-12);
      CHECK(glm_full_bound(cfg, n) <= std::sqrt(2.0 * cfg.sigma2 * d / n) + 1e-12);
      CHECK(glm_random_subset_bound(cfg, n) <= cap / n + 1e-12);
      CHECK(glm_single_letter_bound(cfg, n) <=
            std::sqrt(cfg.sigma2 * d) / n + std::sqrt(cfg.sigma2 * d / (1.0 * n * n * n)) +
                1e-12);
    }
    // n * gen decreases onto the finite limit sqrt(2 sigma2) * gamma ratio,
    // itself below sqrt(2 sigma2 d).
    double prev = std::numeric_limits<double>::infinity();
    double limit = std::sqrt(2.0 * cfg.sigma2) * gamma_half_ratio(d);
    for (int n : {10, 100, 1000, 10000}) {
      double scaled = n * glm_exact_gen(cfg, n);
      CHECK(scaled <= prev + 1e-12);
      CHECK(scaled >= limit - 1e-12);
      CHECK(scaled <= std::sqrt(2.0 * cfg.sigma2 * d) + 1e-12);
      prev = scaled;
    }
    CHECK(prev == doctest::Approx(limit).epsilon(1e-6));
  }
  // ISMI cap for d = 1.
  GlmConfig cfg = config(1);
  for (int n : {2, 10, 100}) {
    CHECK(glm_ismi_bound(cfg, n) <= std::sqrt(2.0 * cfg.sigma2 / (n - 1.0)) + 1e-12);
  }
}

TEST_CASE("bounds dominate the exact error and order correctly") {
  for (int d : {1, 250}) {
    GlmConfig cfg = config(d, 1.0);
    for (int n : {2, 5, 10, 50, 100, 500, 1000}) {
      double gen = glm_exact_gen(cfg, n);
      CHECK(glm_full_bound(cfg, n) >= gen);
      CHECK(glm_single_letter_bound(cfg, n) >= gen);
      CHECK(glm_random_subset_bound(cfg, n) >= gen);
      if (d == 1) CHECK(glm_ismi_bound(cfg, n) >= gen);
      if (n >= 50) {
        CHECK(glm_single_letter_bound(cfg, n) < glm_full_bound(cfg, n));
        CHECK(glm_random_subset_bound(cfg, n) < glm_full_bound(cfg, n));
        if (d == 1) {
          CHECK(glm_single_letter_bound(cfg, n) < glm_ismi_bound(cfg, n));
          CHECK(glm_random_subset_bound(cfg, n) < glm_ismi_bound(cfg, n));
        }
      }
    }
  }
}

TEST_CASE("decay rates: 1/n bounds quarter, 1/sqrt(n) bounds halve") {
  for (int d : {1, 250}) {
    GlmConfig cfg = config(d, 2.0);
    for (int n : {50, 100, 400}) {
      double single_ratio = glm_single_letter_bound(cfg, n) / glm_single_letter_bound(cfg, 4 * n);
      double subset_ratio = glm_random_subset_bound(cfg, n) / glm_random_subset_bound(cfg, 4 * n);
      CHECK(single_ratio >= 3.4);
      CHECK(single_ratio <= 4.6);
      CHECK(subset_ratio == doctest::Approx(4.0).epsilon(1e-12));
      double full_ratio = glm_full_bound(cfg, n) / glm_full_bound(cfg, 4 * n);
      CHECK(full_ratio == doctest::Approx(2.0).epsilon(1e-12));
      if (d == 1) {
        double ismi_ratio = glm_ismi_bound(cfg, n) / glm_ismi_bound(cfg, 4 * n);
        CHECK(ismi_ratio >= 1.8);
        CHECK(ismi_ratio <= 2.2);
      }
    }
  }
  // The full/subset ratio is sqrt(n) exactly (same closed form, shifted).
  GlmConfig cfg = config(3);
  for (int n : {4, 16, 100}) {
    CHECK(glm_full_bound(cfg, n) / glm_random_subset_bound(cfg, n) ==
          doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-12));
  }
}

TEST_CASE("monte carlo agrees with the closed form") {
  GlmConfig cfg = config(1);
  cfg.trials = 40000;
  for (int n : {10, 100}) {
    McEstimate mc = glm_monte_carlo_gen(cfg, n);
    CHECK(std::abs(mc.estimate - glm_exact_gen(cfg, n)) <= 3.0 * mc.std_error);
  }
  GlmConfig wide = config(250);
  wide.trials = 2000;
  McEstimate mc = glm_monte_carlo_gen(wide, 10);
  CHECK(std::abs(mc.estimate - glm_exact_gen(wide, 10)) <= 3.0 * mc.std_error);
}

TEST_CASE("monte carlo is mean-shift invariant and seed deterministic") {
  GlmConfig cfg = config(2);
  cfg.trials = 20000;
  McEstimate base = glm_monte_carlo_gen(cfg, 10);
  McEstimate again = glm_monte_carlo_gen(cfg, 10);
  CHECK(base.estimate == again.estimate);  // bit-identical rerun
  CHECK(base.std_error == again.std_error);

  GlmConfig shifted = cfg;
  shifted.mu = {5.0, 5.0};
  McEstimate moved = glm_monte_carlo_gen(shifted, 10);
  double spread = 3.0 * std::hypot(base.std_error, moved.std_error);
  CHECK(std::abs(base.estimate - moved.estimate) <= spread);

  GlmConfig more = cfg;
  more.trials = 4 * cfg.trials;
  McEstimate finer = glm_monte_carlo_gen(more, 10);
  // Quadrupling the trials roughly halves the standard error.
  CHECK(finer.std_error <= base.std_error / 1.6);
  CHECK(finer.std_error >= base.std_error / 2.7);

  CHECK_THROWS_AS(glm_monte_carlo_gen(config(1), 0), DomainError);
  GlmConfig tiny = config(1);
  tiny.trials = 10;
  CHECK_THROWS_AS(glm_monte_carlo_gen(tiny, 10), DomainError);
}

TEST_CASE("sweep emits the stable csv schema") {
  GlmConfig cfg = config(1);
  cfg.trials = 1000;
  cfg.n_values = {10, 20};
  std::string csv = glm_sweep_csv(cfg);
  CHECK(csv.rfind("d,sigma2,n,gen_exact,gen_mc,gen_mc_se,bound_full,bound_single,bound_subset,"
                  "bound_ismi\n",
                  0) == 0);
  CHECK(csv == glm_sweep_csv(cfg));  // byte-identical rerun

  GlmConfig wide = config(250);
  wide.trials = 1000;
  wide.n_values = {10};
  std::string wide_csv = glm_sweep_csv(wide);
  // No ISMI column value in d != 1: the row ends with a trailing comma.
  auto line_start = wide_csv.find('\n') + 1;
  auto line = wide_csv.substr(line_start, wide_csv.find('\n', line_start) - line_start);
  CHECK(line.back() == ',');
  CHECK(line.rfind("250,", 0) == 0);
}
