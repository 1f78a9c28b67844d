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

#include "genbound/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace genbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMarginalTolerance = 1e-10;
constexpr double kFlowEpsilon = 1e-15;  // mass below this counts as shipped

void require_pair(const FiniteDistribution& p, const FiniteDistribution& q,
                  const MetricSpace& space) {
  if (p.size() != q.size() || p.size() != space.size()) {
    throw DomainError("wasserstein: distributions and metric must share one support");
  }
}

}  // namespace

Coupling::Coupling(std::size_t size, std::vector<double> matrix, const FiniteDistribution& p,
                   const FiniteDistribution& q)
    : size_(size), matrix_(std::move(matrix)) {
  if (matrix_.size() != size_ * size_) throw InvariantError("coupling: matrix size mismatch");
  if (p.size() != size_ || q.size() != size_) throw InvariantError("coupling: marginal size mismatch");
  for (double v : matrix_) {
    if (!(v >= 0.0)) throw InvariantError("coupling: negative entry");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < size_; ++j) {
      row += matrix_[i * size_ + j];
      col += matrix_[j * size_ + i];
    }
    if (std::abs(row - p[i]) > kMarginalTolerance || std::abs(col - q[i]) > kMarginalTolerance) {
      throw InvariantError("coupling: marginals do not match");
    }
  }
}

double Coupling::cost(const MetricSpace& space) const {
  if (space.size() != size_) throw DomainError("coupling: metric support mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      total += matrix_[i * size_ + j] * space(i, j);
    }
  }
  return total;
}

// Transportation LP by successive shortest augmenting paths on the bipartite
// residual graph, with Dijkstra over reduced costs. Exact for these problem
// sizes; every tie in the path search breaks toward the lowest node index.
TransportResult wasserstein1_exact(const FiniteDistribution& p, const FiniteDistribution& q,
                                   const MetricSpace& space) {
  require_pair(p, q, space);
  const std::size_t full = p.size();

  // Prune zero-probability support points; they only add LP degeneracy.
  std::vector<std::size_t> src, snk;
  for (std::size_t i = 0; i < full; ++i) {
    if (p[i] > 0.0) src.push_back(i);
    if (q[i] > 0.0) snk.push_back(i);
  }
  const std::size_t m = src.size(), k = snk.size();

  std::vector<double> supply(m), demand(k);
  for (std::size_t i = 0; i < m; ++i) supply[i] = p[src[i]];
  for (std::size_t j = 0; j < k; ++j) demand[j] = q[snk[j]];

  std::vector<double> flow(m * k, 0.0);
  std::vector<double> potential(m + k, 0.0);  // sources first, then sinks

  // Supplies and demands each sum to one only up to round-off; ship until
  // the smaller residual side is exhausted. The unshipped sliver contributes
  // at most diameter * kResidualSlack to the value, far below the solver's
  // stated 1e-9 tolerance.
  constexpr double kResidualSlack = 1e-12;
  auto residual = [&] {
    double s = std::accumulate(supply.begin(), supply.end(), 0.0);
    double d = std::accumulate(demand.begin(), demand.end(), 0.0);
    return std::min(s, d);
  };
  const std::size_t max_rounds = 4 * (m + k) * (m + k) + 64;
  std::size_t rounds = 0;

  while (residual() > kResidualSlack) {
    if (++rounds > max_rounds) {
      throw InvariantError("wasserstein: solver failed to converge");
    }

    // Multi-source Dijkstra from every source with remaining supply.
    const std::size_t nodes = m + k;
    std::vector<double> dist(nodes, kInf);
    std::vector<std::size_t> parent(nodes, nodes);
    std::vector<bool> done(nodes, false);
    for (std::size_t i = 0; i < m; ++i) {
      if (supply[i] > kFlowEpsilon) dist[i] = 0.0;
    }

    for (;;) {
      std::size_t best = nodes;
      for (std::size_t v = 0; v < nodes; ++v) {
        if (!done[v] && dist[v] < kInf && (best == nodes || dist[v] < dist[best])) best = v;
      }
      if (best == nodes) break;
      done[best] = true;
      if (best < m) {
        std::size_t i = best;
        for (std::size_t j = 0; j < k; ++j) {  // forward arcs, infinite capacity
          if (done[m + j]) continue;
          double reduced = space(src[i], snk[j]) + potential[i] - potential[m + j];
          double cand = dist[i] + std::max(reduced, 0.0);
          if (cand < dist[m + j]) {
            dist[m + j] = cand;
            parent[m + j] = i;
          }
        }
      } else {
        std::size_t j = best - m;
        for (std::size_t i = 0; i < m; ++i) {  // backward arcs where flow exists
          if (done[i] || flow[i * k + j] <= kFlowEpsilon) continue;
          double reduced = -space(src[i], snk[j]) + potential[m + j] - potential[i];
          double cand = dist[m + j] + std::max(reduced, 0.0);
          if (cand < dist[i]) {
            dist[i] = cand;
            parent[i] = m + j;
          }
        }
      }
    }

    // Closest sink with unmet demand (lowest index on ties).
    std::size_t target = nodes;
    for (std::size_t j = 0; j < k; ++j) {
      if (demand[j] > kFlowEpsilon && dist[m + j] < kInf &&
          (target == nodes || dist[m + j] < dist[target])) {
        target = m + j;
      }
    }
    if (target == nodes) {
      if (residual() <= 1e-9) break;  // round-off sliver, nothing left to ship
      throw InvariantError("wasserstein: no augmenting path, marginals inconsistent");
    }

    // Bottleneck along the path: endpoint supply/demand plus backward arcs.
    double amount = demand[target - m];
    std::size_t v = target;
    while (true) {
      std::size_t u = parent[v];
      if (v >= m && u >= m) throw InvariantError("wasserstein: malformed path");
      if (v < m) amount = std::min(amount, flow[v * k + (u - m)]);  // backward arc u->v
      if (u < m && parent[u] == m + k) {
        amount = std::min(amount, supply[u]);
        break;
      }
      v = u;
    }

    // Apply the augmentation.
    v = target;
    while (true) {
      std::size_t u = parent[v];
      if (v >= m) {
        flow[u * k + (v - m)] += amount;  // forward arc u -> v
      } else {
        flow[v * k + (u - m)] -= amount;  // backward arc u -> v cancels flow
      }
      if (u < m && parent[u] == m + k) {
        supply[u] -= amount;
        break;
      }
      v = u;
    }
    demand[target - m] -= amount;

    for (std::size_t node = 0; node < nodes; ++node) {
      if (dist[node] < kInf) potential[node] += dist[node];
    }
  }

  double value = 0.0;
  std::vector<double> plan(full * full, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double f = flow[i * k + j];
      if (f <= 0.0) continue;
      value += f * space(src[i], snk[j]);
      plan[src[i] * full + snk[j]] += f;
    }
  }
  return TransportResult{value, Coupling(full, std::move(plan), p, q)};
}

double wasserstein1_line(std::span<const double> points_p, const FiniteDistribution& p,
                         std::span<const double> points_q, const FiniteDistribution& q) {
  if (points_p.size() != p.size() || points_q.size() != q.size()) {
    throw DomainError("wasserstein1_line: points and probabilities disagree");
  }

  struct Atom {
    double x;
    double dp;  // p mass minus q mass
  };
  std::vector<Atom> atoms;
  atoms.reserve(p.size() + q.size());
  for (std::size_t i = 0; i < p.size(); ++i) atoms.push_back({points_p[i], p[i]});
  for (std::size_t j = 0; j < q.size(); ++j) atoms.push_back({points_q[j], -q[j]});
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });

  // Integral of |F_P - F_Q| over the line.
  double total = 0.0;
  double cdf_diff = 0.0;
  for (std::size_t i = 0; i + 1 <= atoms.size(); ++i) {
    cdf_diff += atoms[i].dp;
    if (i + 1 < atoms.size()) {
      total += std::abs(cdf_diff) * (atoms[i + 1].x - atoms[i].x);
    }
  }
  return total;
}

double gaussian_w2_isotropic(std::span<const double> mean1, std::span<const double> mean2,
                             double var1, double var2) {
  if (mean1.size() != mean2.size() || mean1.empty()) {
    throw DomainError("gaussian_w2: mean vectors must share a positive dimension");
  }
  if (!(var1 >= 0.0) || !(var2 >= 0.0)) throw DomainError("gaussian_w2: negative variance");
  double mean_sq = 0.0;
  for (std::size_t i = 0; i < mean1.size(); ++i) {
    double diff = mean1[i] - mean2[i];
    mean_sq += diff * diff;
  }
  double sdev_diff = std::sqrt(var1) - std::sqrt(var2);
  double d = static_cast<double>(mean1.size());
  return std::sqrt(mean_sq + d * sdev_diff * sdev_diff);
}

double kr_dual_value(const FiniteDistribution& p, const FiniteDistribution& q,
                     const MetricSpace& space) {
  require_pair(p, q, space);
  const std::size_t k = space.size();
  if (k > 5) throw DomainError("kr_dual_value: grid search supports at most 5 points");

  constexpr double kStep = 1e-3;
  std::vector<double> weight(k);
  for (std::size_t i = 0; i < k; ++i) weight[i] = p[i] - q[i];

  // Potentials pinned to f[0] = 0; each axis ranges over the grid points
  // inside the 1-Lipschitz box implied by the already-fixed axes. The last
  // axis is linear in the objective, so only its interval endpoints matter.
  std::vector<double> f(k, 0.0);
  double best = 0.0;  // f = 0 is always feasible

  auto search = [&](auto&& self, std::size_t axis, double partial) -> void {
    double lo = -kInf, hi = kInf;
    for (std::size_t i = 0; i < axis; ++i) {
      lo = std::max(lo, f[i] - space(i, axis));
      hi = std::min(hi, f[i] + space(i, axis));
    }
    if (lo > hi + 1e-12) return;

    if (axis + 1 == k) {
      double cand = partial + (weight[axis] >= 0.0 ? hi : lo) * weight[axis];
      best = std::max(best, cand);
      return;
    }

    long lo_idx = static_cast<long>(std::ceil(lo / kStep - 1e-9));
    long hi_idx = static_cast<long>(std::floor(hi / kStep + 1e-9));
    for (long idx = lo_idx; idx <= hi_idx; ++idx) {
      f[axis] = static_cast<double>(idx) * kStep;
      self(self, axis + 1, partial + f[axis] * weight[axis]);
    }
  };

  if (k == 1) return 0.0;
  search(search, 1, 0.0);
  return best;
}

}  // namespace genbound
