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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "genbound/distribution.hpp"
#include "genbound/metric.hpp"

namespace genbound {

/// A transport plan between two laws on the same support: nonnegative
/// entries, row sums P, column sums Q (within 1e-10).
class Coupling {
 public:
  Coupling(std::size_t size, std::vector<double> matrix,
           const FiniteDistribution& p, const FiniteDistribution& q);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return matrix_[i * size_ + j]; }
  const std::vector<double>& matrix() const { return matrix_; }

  /// Transport cost of this plan under the given metric.
  double cost(const MetricSpace& space) const;

 private:
  std::size_t size_ = 0;
  std::vector<double> matrix_;
};

struct TransportResult {
  double value = 0.0;
  Coupling plan;
};

/// Exact Wasserstein-1 distance on a finite metric space, solved as the
/// transportation LP by successive shortest augmenting paths (an exact
/// min-cost-flow method). Zero-probability support points are pruned
/// before solving; ties in path selection break toward the lowest index,
/// so the returned plan is deterministic across platforms.
TransportResult wasserstein1_exact(const FiniteDistribution& p,
                                   const FiniteDistribution& q,
                                   const MetricSpace& space);

/// Wasserstein-1 between laws on real-valued support points via the
/// quantile formula, integral of |F_P - F_Q|. Serves as an independent
/// route to the LP value when the metric is |x - y|.
double wasserstein1_line(std::span<const double> points_p, const FiniteDistribution& p,
                         std::span<const double> points_q, const FiniteDistribution& q);

/// Wasserstein-2 between isotropic Gaussians N(mean1, var1*I) and
/// N(mean2, var2*I): sqrt(|mean1-mean2|^2 + d*(sqrt var1 - sqrt var2)^2).
double gaussian_w2_isotropic(std::span<const double> mean1, std::span<const double> mean2,
                             double var1, double var2);

/// Kantorovich-Rubinstein dual value by grid search over 1-Lipschitz
/// potential vectors with step 1e-3 (potentials pinned to f(x0) = 0).
/// Intended for tiny spaces (<= 5 points) whose distances lie on the
/// 1e-3 lattice, where the dual optimum falls exactly on the grid and the
/// result matches the primal LP within 1e-6.
double kr_dual_value(const FiniteDistribution& p, const FiniteDistribution& q,
                     const MetricSpace& space);

}  // namespace genbound
