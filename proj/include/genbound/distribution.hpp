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
#include <optional>
#include <span>
#include <vector>

#include "genbound/errors.hpp"

namespace genbound {

/// Normalization slack accepted when validating probability vectors.
inline constexpr double kProbTolerance = 1e-12;

/// A probability distribution over a finite, ordered support.
///
/// Support symbols are opaque: the library works with indices 0..size()-1 and
/// any naming lives at the file-format layer. Probabilities are validated at
/// construction (nonnegative, sum to one within kProbTolerance).
class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  explicit FiniteDistribution(std::vector<double> probs);

  static FiniteDistribution uniform(std::size_t size);
  static FiniteDistribution point_mass(std::size_t size, std::size_t atom);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const FiniteDistribution& other) const = default;

 private:
  std::vector<double> probs_;
};

/// A joint law over a product support, stored as a dense tensor in
/// row-major order (last axis fastest).
class JointTable {
 public:
  JointTable(std::vector<std::size_t> shape, std::vector<double> probs);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t total_size() const { return probs_.size(); }
  double at(std::span<const std::size_t> index) const;
  const std::vector<double>& probs() const { return probs_; }

  /// The same mass as a flat distribution over the product support.
  FiniteDistribution flatten() const { return FiniteDistribution(probs_); }

  /// Sums out the given axes. The result keeps the remaining axes in their
  /// original order; summing out in any axis order gives the same table.
  JointTable marginal(std::span<const std::size_t> axes_to_sum) const;

  /// Conditions on a partial assignment (one optional value per axis) and
  /// returns the renormalized law over the free axes. Throws DomainError if
  /// the evidence event has zero probability.
  JointTable condition(const std::vector<std::optional<std::size_t>>& evidence) const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> probs_;
};

/// A conditional probability distribution: one row (a FiniteDistribution
/// over a shared output support) per input symbol.
class ConditionalKernel {
 public:
  ConditionalKernel(std::size_t input_size, std::size_t output_size);
  ConditionalKernel(std::size_t output_size, std::vector<FiniteDistribution> rows);

  std::size_t input_size() const { return rows_.size(); }
  std::size_t output_size() const { return output_size_; }
  const FiniteDistribution& row(std::size_t input) const;
  void set_row(std::size_t input, FiniteDistribution dist);

 private:
  std::size_t output_size_ = 0;
  std::vector<FiniteDistribution> rows_;
};

/// Mixed-radix index helpers for tuples over finite alphabets
/// (digit 0 is the most significant, matching row-major tensor order).
std::size_t tuple_to_index(std::span<const std::size_t> digits, std::size_t base);
std::vector<std::size_t> index_to_tuple(std::size_t index, std::size_t base, std::size_t length);

}  // namespace genbound
