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
#include <vector>

#include "genbound/errors.hpp"

namespace genbound {

/// A finite metric space: a symmetric pairwise-distance matrix over an
/// ordered support. The metric axioms (zero diagonal, symmetry, triangle
/// inequality) are validated at construction; the triangle check is
/// exhaustive for supports of up to 64 points.
class MetricSpace {
 public:
  MetricSpace(std::size_t size, std::vector<double> distances);

  /// All-ones off-diagonal: rho(x, y) = 1[x != y].
  static MetricSpace discrete(std::size_t size);

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * size_ + j]; }
  double diameter() const;
  bool is_discrete() const;
  const std::vector<double>& distances() const { return dist_; }

 private:
  std::size_t size_ = 0;
  std::vector<double> dist_;
};

}  // namespace genbound
