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

#include "genbound/scenario_io.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace genbound {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message) { throw ParseError("scenario: " + message); }

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) fail(std::string("missing field '") + field + "'");
  return *it;
}

std::vector<std::string> parse_alphabet(const json& node, const char* field) {
  if (!node.is_array() || node.empty()) fail(std::string(field) + " must be a nonempty array");
  std::vector<std::string> symbols;
  std::map<std::string, std::size_t> seen;
  for (const auto& item : node) {
    if (!item.is_string()) fail(std::string(field) + " entries must be strings");
    std::string s = item.get<std::string>();
    if (!seen.emplace(s, symbols.size()).second) {
      fail(std::string(field) + " has duplicate symbol '" + s + "'");
    }
    symbols.push_back(std::move(s));
  }
  return symbols;
}

FiniteDistribution parse_probs(const json& node, std::size_t size, const char* field) {
  if (!node.is_array() || node.size() != size) {
    fail(std::string(field) + " must be an array matching the alphabet size");
  }
  std::vector<double> probs;
  for (const auto& item : node) {
    if (!item.is_number()) fail(std::string(field) + " entries must be numbers");
    probs.push_back(item.get<double>());
  }
  try {
    return FiniteDistribution(std::move(probs));
  } catch (const InvariantError& e) {
    throw InvariantError(std::string(field) + ": " + e.what());
  }
}

MetricSpace parse_metric(const json& node, std::size_t size, const char* field) {
  if (node.is_string()) {
    if (node.get<std::string>() != "discrete") {
      fail(std::string(field) + " must be \"discrete\" or a distance matrix");
    }
    return MetricSpace::discrete(size);
  }
  if (!node.is_array() || node.size() != size) {
    fail(std::string(field) + " must be a " + std::to_string(size) + "x" +
         std::to_string(size) + " matrix");
  }
  std::vector<double> dist;
  dist.reserve(size * size);
  for (const auto& row : node) {
    if (!row.is_array() || row.size() != size) {
      fail(std::string(field) + " rows must have length " + std::to_string(size));
    }
    for (const auto& v : row) {
      if (!v.is_number()) fail(std::string(field) + " entries must be numbers");
      dist.push_back(v.get<double>());
    }
  }
  return MetricSpace(size, std::move(dist));
}

LossTable parse_loss(const json& node, std::size_t w_size, std::size_t z_size) {
  if (!node.is_array() || node.size() != w_size) {
    fail("loss must be a |W| x |Z| matrix (rows per hypothesis)");
  }
  std::vector<double> values;
  values.reserve(w_size * z_size);
  for (const auto& row : node) {
    if (!row.is_array() || row.size() != z_size) {
      fail("loss rows must have length |Z| = " + std::to_string(z_size));
    }
    for (const auto& v : row) {
      if (!v.is_number()) fail("loss entries must be numbers");
      values.push_back(v.get<double>());
    }
  }
  return LossTable(w_size, z_size, std::move(values));
}

std::size_t symbol_index(const std::vector<std::string>& alphabet, const std::string& s,
                         const std::string& context) {
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (alphabet[i] == s) return i;
  }
  fail("unknown symbol '" + s + "' in " + context);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

// Kernel keys: "z1,...,zk" then "|u-bits" for the supersample setting and
// "|r" when an auxiliary alphabet is declared (docs/scenario_schema.md).
struct KernelKey {
  std::size_t tuple_index = 0;
  std::size_t mask = 0;
  std::size_t r = 0;
};

KernelKey parse_key(const std::string& key, const std::vector<std::string>& z_alphabet,
                    std::size_t tuple_len, bool supersample, std::size_t n,
                    const std::vector<std::string>& r_alphabet) {
  auto parts = split(key, '|');
  std::size_t expected = 1 + (supersample ? 1 : 0) + (r_alphabet.empty() ? 0 : 1);
  if (parts.size() != expected) {
    fail("kernel key '" + key + "' must have " + std::to_string(expected) +
         " '|'-separated parts");
  }

  KernelKey out;
  auto symbols = split(parts[0], ',');
  if (symbols.size() != tuple_len) {
    fail("kernel key '" + key + "' must list " + std::to_string(tuple_len) + " samples");
  }
  std::vector<std::size_t> digits;
  for (const auto& s : symbols) {
    digits.push_back(symbol_index(z_alphabet, s, "kernel key '" + key + "'"));
  }
  out.tuple_index = tuple_to_index(digits, z_alphabet.size());

  std::size_t part = 1;
  if (supersample) {
    const std::string& bits = parts[part++];
    if (bits.size() != n) {
      fail("kernel key '" + key + "' must carry " + std::to_string(n) + " mask bits");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (bits[i] == '1') {
        out.mask |= std::size_t{1} << i;
      } else if (bits[i] != '0') {
        fail("kernel key '" + key + "' has a non-binary mask bit");
      }
    }
  }
  if (!r_alphabet.empty()) {
    out.r = symbol_index(r_alphabet, parts[part], "kernel key '" + key + "'");
  }
  return out;
}

}  // namespace

LoadedScenario load_scenario_json(const std::string& text, const std::string& default_id) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: invalid JSON, ") + e.what());
  }
  if (!doc.is_object()) fail("document must be a JSON object");

  std::string type = require(doc, "type").get<std::string>();
  if (type != "standard" && type != "supersample") {
    fail("type must be \"standard\" or \"supersample\"");
  }
  const bool supersample = type == "supersample";

  auto z_alphabet = parse_alphabet(require(doc, "z_alphabet"), "z_alphabet");
  auto w_alphabet = parse_alphabet(require(doc, "w_alphabet"), "w_alphabet");
  const json& n_node = require(doc, "n");
  if (!n_node.is_number_unsigned() || n_node.get<std::size_t>() == 0) {
    fail("n must be a positive integer");
  }
  std::size_t n = n_node.get<std::size_t>();

  FiniteDistribution p_z = parse_probs(require(doc, "p_z"), z_alphabet.size(), "p_z");

  std::vector<std::string> r_alphabet;
  FiniteDistribution p_r = FiniteDistribution::uniform(1);
  if (doc.contains("r_alphabet")) {
    r_alphabet = parse_alphabet(doc["r_alphabet"], "r_alphabet");
    p_r = parse_probs(require(doc, "p_r"), r_alphabet.size(), "p_r");
  }
  std::size_t r_size = r_alphabet.empty() ? 1 : r_alphabet.size();

  LossTable loss = parse_loss(require(doc, "loss"), w_alphabet.size(), z_alphabet.size());
  MetricSpace metric = parse_metric(require(doc, "metric"), w_alphabet.size(), "metric");

  double lipschitz;
  if (doc.contains("lipschitz")) {
    if (!doc["lipschitz"].is_number()) fail("lipschitz must be a number");
    lipschitz = doc["lipschitz"].get<double>();
  } else {
    lipschitz = loss.lipschitz_in_w(metric);
  }

  // Kernel rows.
  const json& kernel_node = require(doc, "kernel");
  if (!kernel_node.is_object()) fail("kernel must be an object keyed by sample tuples");
  std::size_t tuple_len = supersample ? 2 * n : n;
  std::size_t tuple_space = 1;
  for (std::size_t i = 0; i < tuple_len; ++i) {
    if (tuple_space > kEnumerationGuard / z_alphabet.size()) {
      fail("sample space exceeds the enumeration guard");
    }
    tuple_space *= z_alphabet.size();
  }
  std::size_t mask_space = supersample ? (std::size_t{1} << n) : 1;
  std::size_t row_count = tuple_space * mask_space * r_size;

  std::vector<FiniteDistribution> rows(row_count, FiniteDistribution::uniform(w_alphabet.size()));
  std::vector<bool> seen(row_count, false);
  for (const auto& [key, value] : kernel_node.items()) {
    KernelKey parsed = parse_key(key, z_alphabet, tuple_len, supersample, n, r_alphabet);
    std::size_t index =
        (parsed.tuple_index * mask_space + parsed.mask) * r_size + parsed.r;
    if (seen[index]) fail("kernel key '" + key + "' appears twice");
    seen[index] = true;
    rows[index] = parse_probs(value, w_alphabet.size(), "kernel row");
  }
  for (std::size_t i = 0; i < row_count; ++i) {
    if (!seen[i]) {
      fail("kernel is missing " + std::to_string(std::count(seen.begin(), seen.end(), false)) +
           " row(s); every sample tuple needs one");
    }
  }

  std::optional<MetricSpace> z_metric;
  if (doc.contains("z_metric")) {
    z_metric = parse_metric(doc["z_metric"], z_alphabet.size(), "z_metric");
  }

  std::string id = default_id;
  if (doc.contains("id")) {
    if (!doc["id"].is_string()) fail("id must be a string");
    id = doc["id"].get<std::string>();
  }

  ConditionalKernel kernel(w_alphabet.size(), std::move(rows));
  if (supersample) {
    return LoadedScenario{
        SupersampleScenario(z_alphabet.size(), n, std::move(p_z), std::move(kernel),
                            std::move(loss), std::move(metric), lipschitz, std::move(p_r)),
        std::move(id), std::move(z_metric)};
  }
  return LoadedScenario{
      DiscreteScenario(z_alphabet.size(), n, std::move(p_z), std::move(kernel), std::move(loss),
                       std::move(metric), lipschitz, std::move(p_r)),
      std::move(id), std::move(z_metric)};
}

}  // namespace genbound
