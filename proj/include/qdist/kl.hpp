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

#include <cstdint>
#include <optional>
#include <vector>

#include "qdist/graph.hpp"
#include "qdist/partition.hpp"

namespace qdist {

struct KlOptions {
  std::uint64_t seed = 0;
  /// Starting partitions tried. The first is the supplied initial partition
  /// (or the sequential fill); the rest are seeded random fills.
  int restarts = 8;
  int max_passes = 64;
};

/// Kernighan-Lin bisection into subsets of at most (size0, size1) nodes.
/// Never returns a cut above that of the initial partition it refined.
Partition kl_bipartition(const WeightedGraph& graph, int size0, int size1,
                         const std::optional<Partition>& initial,
                         const KlOptions& options = {});

/// Recursive bisection over the QPU set: the QPUs are split into two groups
/// of near-equal total capacity, the graph is bisected with those totals as
/// sizes, and each side recurses within its group.
Partition kl_kway(const WeightedGraph& graph, const std::vector<int>& capacities,
                  const std::optional<Partition>& initial,
                  const KlOptions& options = {});

/// One refinement run from `start` with no restarts. kl_kway with a single
/// restart and `start` as the initial partition.
Partition kl_refine(const WeightedGraph& graph, const Partition& start,
                    int max_passes = 64);

/// Number of capacity-respecting labelings of `num_nodes` nodes (QPU labels
/// distinguishable). Saturates at a large finite value.
double count_assignments(int num_nodes, const std::vector<int>& capacities);

struct ExhaustiveResult {
  Partition partition;
  double cut = 0.0;
};

inline constexpr double kExhaustiveLimit = 1e7;

/// Global minimum cut over every capacity-respecting labeling; ties go to the
/// lexicographically smallest assignment. Throws TooLargeError above
/// kExhaustiveLimit labelings.
ExhaustiveResult exhaustive_kway(const WeightedGraph& graph,
                                 const std::vector<int>& capacities);

}  // namespace qdist
