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

#include "genbound/glm.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "genbound/errors.hpp"

namespace genbound {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream seed for one (d, n) Monte Carlo cell.
std::uint64_t cell_seed(std::uint64_t seed, int d, int n) {
  return splitmix64(splitmix64(seed ^ (0x6d6f6e7465ull + static_cast<std::uint64_t>(d))) ^
                    static_cast<std::uint64_t>(n));
}

// Box-Muller over a seeded mt19937_64: platform-independent normals, unlike
// std::normal_distribution whose algorithm is implementation-defined.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = kTwoPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform() {  // [0, 1) with 53 random bits
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 rng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

void check_basic(const GlmConfig& cfg, int n, int min_n) {
  if (cfg.d < 1) throw DomainError("glm: dimension must be >= 1");
  if (!(cfg.sigma2 > 0.0)) throw DomainError("glm: sigma2 must be positive");
  if (n < min_n) throw DomainError("glm: n too small for this quantity");
}

void append_field(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  out += buf;
}

}  // namespace

double gamma_half_ratio(double d) {
  if (!(d > 0.0)) throw DomainError("gamma_half_ratio: d must be positive");
  return std::exp(std::lgamma((d + 1.0) / 2.0) - std::lgamma(d / 2.0));
}

double glm_exact_gen(const GlmConfig& cfg, int n) {
  check_basic(cfg, n, 2);
  double dn = n;
  return std::sqrt(2.0 * cfg.sigma2 / dn) * (std::sqrt(dn + 1.0) - std::sqrt(dn - 1.0)) *
         gamma_half_ratio(cfg.d);
}

double glm_full_bound(const GlmConfig& cfg, int n) {
  check_basic(cfg, n, 1);
  return std::sqrt(4.0 * cfg.sigma2 / static_cast<double>(n)) * gamma_half_ratio(cfg.d);
}

double glm_single_letter_bound(const GlmConfig& cfg, int n) {
  check_basic(cfg, n, 1);
  double dn = n;
  return std::sqrt(2.0 * cfg.sigma2) / dn * gamma_half_ratio(cfg.d) +
         std::sqrt(cfg.sigma2 * static_cast<double>(cfg.d) / (dn * dn * dn));
}

double glm_random_subset_bound(const GlmConfig& cfg, int n) {
  check_basic(cfg, n, 1);
  return std::sqrt(4.0 * cfg.sigma2) / static_cast<double>(n) * gamma_half_ratio(cfg.d);
}

double glm_ismi_bound(const GlmConfig& cfg, int n) {
  check_basic(cfg, n, 2);
  if (cfg.d != 1) throw DomainError("glm: the ISMI bound is derived for d = 1 only");
  double dn = n;
  return std::sqrt(cfg.sigma2 * (1.0 + 1.0 / dn) * std::log(dn / (dn - 1.0)));
}

McEstimate glm_monte_carlo_gen(const GlmConfig& cfg, int n) {
  check_basic(cfg, n, 1);
  if (cfg.trials < 1000) throw DomainError("glm: Monte Carlo needs at least 1000 trials");
  const int d = cfg.d;
  const double sigma = std::sqrt(cfg.sigma2);
  GaussianStream gauss(cell_seed(cfg.seed, d, n));

  std::vector<double> mu(static_cast<std::size_t>(d), 0.0);
  for (std::size_t k = 0; k < mu.size() && k < cfg.mu.size(); ++k) mu[k] = cfg.mu[k];

  std::vector<double> samples(static_cast<std::size_t>(n) * d);
  std::vector<double> mean(static_cast<std::size_t>(d));
  double acc_mean = 0.0, acc_m2 = 0.0;

  for (long t = 0; t < cfg.trials; ++t) {
    for (double& v : samples) v = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) {
        samples[static_cast<std::size_t>(i) * d + k] = mu[k] + sigma * gauss.next();
      }
    }
    for (int k = 0; k < d; ++k) mean[k] = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) mean[k] += samples[static_cast<std::size_t>(i) * d + k];
    }
    for (int k = 0; k < d; ++k) mean[k] /= n;

    double population = 0.0;
    for (int k = 0; k < d; ++k) {
      double fresh = mu[k] + sigma * gauss.next();
      double diff = mean[k] - fresh;
      population += diff * diff;
    }
    population = std::sqrt(population);

    double empirical = 0.0;
    for (int i = 0; i < n; ++i) {
      double sq = 0.0;
      for (int k = 0; k < d; ++k) {
        double diff = mean[k] - samples[static_cast<std::size_t>(i) * d + k];
        sq += diff * diff;
      }
      empirical += std::sqrt(sq);
    }
    empirical /= n;

    // Welford update of the running mean and scatter.
    double x = population - empirical;
    double delta = x - acc_mean;
    acc_mean += delta / static_cast<double>(t + 1);
    acc_m2 += delta * (x - acc_mean);
  }

  McEstimate out;
  out.estimate = acc_mean;
  double variance = acc_m2 / static_cast<double>(cfg.trials - 1);
  out.std_error = std::sqrt(variance / static_cast<double>(cfg.trials));
  return out;
}

std::vector<GlmCurvePoint> glm_sweep(const GlmConfig& cfg) {
  if (cfg.n_values.empty()) throw DomainError("glm: empty n list");
  std::vector<GlmCurvePoint> points;
  points.reserve(cfg.n_values.size());
  for (int n : cfg.n_values) {
    GlmCurvePoint point;
    point.n = n;
    point.gen_exact = glm_exact_gen(cfg, n);
    point.bound_full = glm_full_bound(cfg, n);
    point.bound_single = glm_single_letter_bound(cfg, n);
    point.bound_subset = glm_random_subset_bound(cfg, n);
    if (cfg.d == 1) point.bound_ismi = glm_ismi_bound(cfg, n);
    McEstimate mc = glm_monte_carlo_gen(cfg, n);
    point.gen_mc = mc.estimate;
    point.gen_mc_se = mc.std_error;
    points.push_back(point);
  }
  return points;
}

std::string glm_sweep_csv(const GlmConfig& cfg) {
  auto points = glm_sweep(cfg);
  std::string out =
      "d,sigma2,n,gen_exact,gen_mc,gen_mc_se,bound_full,bound_single,bound_subset,bound_ismi\n";
  for (const GlmCurvePoint& p : points) {
    out += std::to_string(cfg.d);
    out += ',';
    append_field(out, cfg.sigma2);
    out += ',';
    out += std::to_string(p.n);
    out += ',';
    append_field(out, p.gen_exact);
    out += ',';
    append_field(out, p.gen_mc);
    out += ',';
    append_field(out, p.gen_mc_se);
    out += ',';
    append_field(out, p.bound_full);
    out += ',';
    append_field(out, p.bound_single);
    out += ',';
    append_field(out, p.bound_subset);
    out += ',';
    if (p.bound_ismi) append_field(out, *p.bound_ismi);
    out += '\n';
  }
  return out;
}

}  // namespace genbound
