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

#include "genbound/distribution.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace genbound {

namespace {

void validate_probs(const std::vector<double>& probs) {
  if (probs.empty()) {
    throw InvariantError("distribution: empty support");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {  // also rejects NaN
      throw InvariantError("distribution: negative probability " + std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw InvariantError("distribution: probabilities sum to " + std::to_string(total));
  }
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
  validate_probs(probs_);
}

FiniteDistribution FiniteDistribution::uniform(std::size_t size) {
  if (size == 0) throw InvariantError("distribution: empty support");
  return FiniteDistribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

FiniteDistribution FiniteDistribution::point_mass(std::size_t size, std::size_t atom) {
  if (atom >= size) throw DomainError("point_mass: atom out of range");
  std::vector<double> probs(size, 0.0);
  probs[atom] = 1.0;
  return FiniteDistribution(std::move(probs));
}

JointTable::JointTable(std::vector<std::size_t> shape, std::vector<double> probs)
    : shape_(std::move(shape)), probs_(std::move(probs)) {
  std::size_t expected = 1;
  for (std::size_t s : shape_) {
    if (s == 0) throw InvariantError("joint table: zero-length axis");
    expected *= s;
  }
  if (expected != probs_.size()) {
    throw InvariantError("joint table: shape/probability size mismatch");
  }
  validate_probs(probs_);
}

double JointTable::at(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) throw DomainError("joint table: index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (index[a] >= shape_[a]) throw DomainError("joint table: index out of range");
    flat = flat * shape_[a] + index[a];
  }
  return probs_[flat];
}

JointTable JointTable::marginal(std::span<const std::size_t> axes_to_sum) const {
  std::vector<bool> summed(shape_.size(), false);
  for (std::size_t a : axes_to_sum) {
    if (a >= shape_.size()) throw DomainError("marginal: axis out of range");
    summed[a] = true;
  }

  std::vector<std::size_t> kept_shape;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (!summed[a]) kept_shape.push_back(shape_[a]);
  }
  if (kept_shape.empty()) kept_shape.push_back(1);  // marginalizing everything

  std::size_t kept_size =
      std::accumulate(kept_shape.begin(), kept_shape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> out(kept_size, 0.0);

  std::vector<std::size_t> index(shape_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t a = shape_.size(); a-- > 0;) {
      index[a] = rest % shape_[a];
      rest /= shape_[a];
    }
    std::size_t kept_flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
      if (!summed[a]) kept_flat = kept_flat * shape_[a] + index[a];
    }
    out[kept_flat] += probs_[flat];
  }
  return JointTable(std::move(kept_shape), std::move(out));
}

JointTable JointTable::condition(const std::vector<std::optional<std::size_t>>& evidence) const {
  if (evidence.size() != shape_.size()) throw DomainError("condition: evidence rank mismatch");
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (evidence[a] && *evidence[a] >= shape_[a]) {
      throw DomainError("condition: evidence value out of range on axis " + std::to_string(a));
    }
  }

  std::vector<std::size_t> free_shape;
  for (std::size_t a = 0; a < shape_.size(); ++a) {
    if (!evidence[a]) free_shape.push_back(shape_[a]);
  }
  if (free_shape.empty()) free_shape.push_back(1);

  std::size_t free_size =
      std::accumulate(free_shape.begin(), free_shape.end(), std::size_t{1}, std::multiplies<>());
  std::vector<double> out(free_size, 0.0);
  double mass = 0.0;

  std::vector<std::size_t> index(shape_.size(), 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t rest = flat;
    for (std::size_t a = shape_.size(); a-- > 0;) {
      index[a] = rest % shape_[a];
      rest /= shape_[a];
    }
    bool matches = true;
    for (std::size_t a = 0; a < shape_.size() && matches; ++a) {
      if (evidence[a] && index[a] != *evidence[a]) matches = false;
    }
    if (!matches) continue;
    std::size_t free_flat = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
      if (!evidence[a]) free_flat = free_flat * shape_[a] + index[a];
    }
    out[free_flat] += probs_[flat];
    mass += probs_[flat];
  }

  if (mass <= 0.0) {
    throw DomainError("condition: unconditionable, evidence event has zero probability");
  }
  for (double& v : out) v /= mass;
  return JointTable(std::move(free_shape), std::move(out));
}

ConditionalKernel::ConditionalKernel(std::size_t input_size, std::size_t output_size)
    : output_size_(output_size),
      rows_(input_size, FiniteDistribution::uniform(output_size)) {
  if (input_size == 0) throw InvariantError("kernel: empty input space");
}

ConditionalKernel::ConditionalKernel(std::size_t output_size, std::vector<FiniteDistribution> rows)
    : output_size_(output_size), rows_(std::move(rows)) {
  if (rows_.empty()) throw InvariantError("kernel: empty input space");
  for (const auto& row : rows_) {
    if (row.size() != output_size_) {
      throw InvariantError("kernel: row does not share the output support");
    }
  }
}

const FiniteDistribution& ConditionalKernel::row(std::size_t input) const {
  if (input >= rows_.size()) throw DomainError("kernel: input out of range");
  return rows_[input];
}

void ConditionalKernel::set_row(std::size_t input, FiniteDistribution dist) {
  if (input >= rows_.size()) throw DomainError("kernel: input out of range");
  if (dist.size() != output_size_) {
    throw InvariantError("kernel: row does not share the output support");
  }
  rows_[input] = std::move(dist);
}

std::size_t tuple_to_index(std::span<const std::size_t> digits, std::size_t base) {
  std::size_t index = 0;
  for (std::size_t d : digits) {
    if (d >= base) throw DomainError("tuple_to_index: digit out of range");
    index = index * base + d;
  }
  return index;
}

std::vector<std::size_t> index_to_tuple(std::size_t index, std::size_t base, std::size_t length) {
  std::vector<std::size_t> digits(length, 0);
  for (std::size_t pos = length; pos-- > 0;) {
    digits[pos] = index % base;
    index /= base;
  }
  if (index != 0) throw DomainError("index_to_tuple: index out of range");
  return digits;
}

}  // namespace genbound
