// Copyright 2026 The qdist Authors
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

#include "qdist/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <string>

#include "qdist/error.hpp"

namespace qdist {

void check_capacities(std::span<const int> capacities, int num_nodes) {
  if (capacities.empty()) throw DomainError("at least one QPU is required");
  long long total = 0;
  for (int c : capacities) {
    if (c < 1) throw DomainError("QPU capacities must be positive");
    total += c;
  }
  if (total < num_nodes) {
    throw InfeasibleError("capacities hold " + std::to_string(total) +
                          " qubits but " + std::to_string(num_nodes) +
                          " are required");
  }
}

Partition::Partition(std::vector<int> assignment, std::vector<int> capacities)
    : assignment_(std::move(assignment)), capacities_(std::move(capacities)) {
  check_capacities(capacities_, num_nodes());
  std::vector<int> load(capacities_.size(), 0);
  for (int p : assignment_) {
    if (p < 0 || p >= num_parts()) {
      throw DomainError("partition label " + std::to_string(p) +
                        " outside [0, " + std::to_string(num_parts()) + ")");
    }
    if (++load[p] > capacities_[p]) {
      throw InfeasibleError("QPU " + std::to_string(p) + " exceeds capacity " +
                            std::to_string(capacities_[p]));
    }
  }
}

Partition Partition::sequential(int num_nodes, std::vector<int> capacities) {
  check_capacities(capacities, num_nodes);
  std::vector<int> assignment(static_cast<std::size_t>(num_nodes));
  int part = 0;
  int used = 0;
  for (int v = 0; v < num_nodes; ++v) {
    while (used == capacities[part]) {
      ++part;
      used = 0;
    }
    assignment[v] = part;
    ++used;
  }
  return Partition(std::move(assignment), std::move(capacities));
}

int Partition::part_size(int part) const {
  return static_cast<int>(
      std::count(assignment_.begin(), assignment_.end(), part));
}

std::vector<int> Partition::members(int part) const {
  std::vector<int> out;
  for (int v = 0; v < num_nodes(); ++v) {
    if (assignment_[v] == part) out.push_back(v);
  }
  return out;
}

int hamming_distance(const Partition& a, const Partition& b) {
  if (a.num_nodes() != b.num_nodes()) {
    throw DomainError("partitions cover different node counts");
  }
  int d = 0;
  for (int v = 0; v < a.num_nodes(); ++v) d += a.part_of(v) != b.part_of(v);
  return d;
}

std::vector<int> parse_capacities(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view tok = text.substr(pos, comma - pos);
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size() || v < 1) {
      throw DomainError("bad capacity list '" + std::string(text) +
                        "' (expected positive integers like 4,4)");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::vector<int> balanced_capacities(int num_nodes, int num_parts) {
  if (num_parts < 1) throw DomainError("need at least one QPU");
  if (num_nodes < num_parts) {
    throw DomainError("more QPUs than qubits for a balanced split");
  }
  std::vector<int> caps(static_cast<std::size_t>(num_parts), num_nodes / num_parts);
  for (int p = 0; p < num_nodes % num_parts; ++p) ++caps[p];
  return caps;
}

}  // namespace qdist
