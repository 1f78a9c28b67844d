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

#include "genbound/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace genbound {

namespace {
// Slack for the triangle-inequality check; distances assembled from float
// arithmetic can miss exactness by a few ulps.
constexpr double kTriangleSlack = 1e-12;
}  // namespace

MetricSpace::MetricSpace(std::size_t size, std::vector<double> distances)
    : size_(size), dist_(std::move(distances)) {
  if (size_ == 0) throw InvariantError("metric: empty support");
  if (dist_.size() != size_ * size_) throw InvariantError("metric: matrix size mismatch");
  for (std::size_t i = 0; i < size_; ++i) {
    if (dist_[i * size_ + i] != 0.0) throw InvariantError("metric: nonzero diagonal");
    for (std::size_t j = 0; j < size_; ++j) {
      double d = dist_[i * size_ + j];
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw InvariantError("metric: invalid distance " + std::to_string(d));
      }
      if (d != dist_[j * size_ + i]) throw InvariantError("metric: asymmetric matrix");
      if (i != j && d == 0.0) {
        throw InvariantError("metric: zero distance between distinct points");
      }
    }
  }
  if (size_ <= 64) {
    for (std::size_t i = 0; i < size_; ++i) {
      for (std::size_t j = 0; j < size_; ++j) {
        for (std::size_t k = 0; k < size_; ++k) {
          if (dist_[i * size_ + j] >
              dist_[i * size_ + k] + dist_[k * size_ + j] + kTriangleSlack) {
            throw InvariantError("metric: triangle inequality violated");
          }
        }
      }
    }
  }
}

MetricSpace MetricSpace::discrete(std::size_t size) {
  std::vector<double> dist(size * size, 1.0);
  for (std::size_t i = 0; i < size; ++i) dist[i * size + i] = 0.0;
  return MetricSpace(size, std::move(dist));
}

double MetricSpace::diameter() const {
  return *std::max_element(dist_.begin(), dist_.end());
}

bool MetricSpace::is_discrete() const {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      if (i != j && dist_[i * size_ + j] != 1.0) return false;
    }
  }
  return true;
}

}  // namespace genbound
