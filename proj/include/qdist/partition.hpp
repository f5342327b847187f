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

#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace qdist {

/// Total assignment of nodes (logical qubits) to QPU labels [0, m) under
/// per-QPU capacities. Construction validates every invariant.
class Partition {
 public:
  Partition(std::vector<int> assignment, std::vector<int> capacities);

  /// Fills QPUs in node-index order up to capacity.
  static Partition sequential(int num_nodes, std::vector<int> capacities);

  int num_nodes() const { return static_cast<int>(assignment_.size()); }
  int num_parts() const { return static_cast<int>(capacities_.size()); }
  int part_of(int node) const { return assignment_[node]; }
  int part_size(int part) const;
  std::span<const int> assignment() const { return assignment_; }
  std::span<const int> capacities() const { return capacities_; }
  std::vector<int> members(int part) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  std::vector<int> capacities_;
};

/// Number of nodes whose label differs. Both partitions must cover the same
/// nodes.
int hamming_distance(const Partition& a, const Partition& b);

/// Checks capacities are positive and hold `num_nodes`; throws otherwise.
void check_capacities(std::span<const int> capacities, int num_nodes);

/// "4,4,3" -> {4,4,3}. Throws DomainError on anything but positive integers.
std::vector<int> parse_capacities(std::string_view text);

/// Near-equal capacities for m QPUs: the first n % m QPUs get ceil(n/m).
std::vector<int> balanced_capacities(int num_nodes, int num_parts);

}  // namespace qdist
