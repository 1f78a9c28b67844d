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

#include "genbound/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace genbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_shared_support(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.size() != q.size()) {
    throw DomainError("divergence: supports differ in size");
  }
}

}  // namespace

double total_variation(const FiniteDistribution& p, const FiniteDistribution& q) {
  require_shared_support(p, q);
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::abs(p[i] - q[i]);
  return 0.5 * l1;
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  require_shared_support(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;  // 0 log 0 := 0
    if (q[i] == 0.0) return kInf;
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(sum, 0.0);  // guard against -1e-17 round-off at p == q
}

double chi_squared(const FiniteDistribution& p, const FiniteDistribution& q) {
  require_shared_support(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double diff = p[i] - q[i];
    if (diff == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    sum += diff * diff / q[i];
  }
  return sum;
}

double hellinger(const FiniteDistribution& p, const FiniteDistribution& q) {
  require_shared_support(p, q);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double diff = std::sqrt(p[i]) - std::sqrt(q[i]);
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double lautum_component(const FiniteDistribution& p, const FiniteDistribution& q) {
  return kl_divergence(q, p);
}

double psi(double x) {
  if (std::isnan(x) || x < 0.0) throw DomainError("psi: negative argument");
  if (std::isinf(x)) return 1.0;  // the BH branch limit
  return std::sqrt(std::min(x / 2.0, 1.0 - std::exp(-x)));
}

double pinsker_bh_crossover() {
  // x/2 - (1 - e^-x) is negative at 1 and positive at 3; bisect the sign
  // change rather than hard-coding the root.
  double lo = 1.0, hi = 3.0;
  auto gap = [](double x) { return x / 2.0 - (1.0 - std::exp(-x)); };
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double w_from_kl_subgaussian(double kl_value, double sigma) {
  if (std::isnan(kl_value) || kl_value < 0.0) {
    throw DomainError("w_from_kl_subgaussian: negative divergence");
  }
  if (std::isnan(sigma) || sigma < 0.0) {
    throw DomainError("w_from_kl_subgaussian: negative sigma");
  }
  return std::sqrt(2.0 * sigma * sigma * kl_value);
}

double hellinger_tv_bound(double h) {
  constexpr double kSqrt2 = 1.4142135623730951;
  if (std::isnan(h) || h < 0.0 || h > kSqrt2 + 1e-12) {
    throw DomainError("hellinger_tv_bound: argument outside [0, sqrt 2]");
  }
  h = std::min(h, kSqrt2);
  return 0.5 * h * std::sqrt(4.0 - h * h);
}

Chi2TvBounds chi2_tv_bounds(double chi2) {
  if (std::isnan(chi2) || chi2 < 0.0) throw DomainError("chi2_tv_bounds: negative divergence");
  Chi2TvBounds out;
  if (std::isinf(chi2)) {
    out.via_kl = kInf;
    out.basic = kInf;
    return out;
  }
  out.via_kl = std::sqrt(std::log1p(chi2) / 2.0);
  out.basic = 0.5 * std::sqrt(chi2);
  return out;
}

}  // namespace genbound
