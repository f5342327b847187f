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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdist/circuit.hpp"
#include "qdist/partition.hpp"

namespace qdist {

struct Edge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected weighted graph. Interaction, window, demand and topology graphs
/// all share this shape. Only positive weights are stored; a missing edge
/// has weight zero.
class WeightedGraph {
 public:
  explicit WeightedGraph(int num_nodes = 0);

  int num_nodes() const { return num_nodes_; }
  /// Adds `w` (>= 0) to the weight of {u, v}. Self-loops are rejected.
  void add_weight(int u, int v, double w);
  double weight(int u, int v) const;
  std::size_t num_edges() const { return weights_.size(); }
  /// Edges with u < v, sorted by (u, v).
  std::vector<Edge> edges() const;
  double total_weight() const;
  /// Row-major num_nodes x num_nodes matrix with a zero diagonal.
  std::vector<double> adjacency() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  int num_nodes_;
  std::map<std::pair<int, int>, double> weights_;
};

/// Cost of a two-qubit gate in EPR pairs when it runs remotely.
int gate_cost(const Gate& gate, int swap_weight);

/// One node per qubit; each two-qubit gate adds its cost to its qubit pair.
WeightedGraph build_interaction_graph(const Circuit& circuit,
                                      int swap_weight = 1);
WeightedGraph build_interaction_graph(std::span<const Gate> gates,
                                      int num_qubits, int swap_weight = 1);

/// Interaction graph of a window with pairs that share a QPU under `prev`
/// counted twice. All circuit qubits are nodes.
WeightedGraph build_window_graph(std::span<const Gate> window_gates,
                                 const Partition& prev, int num_qubits,
                                 int swap_weight = 1);

/// Total weight of edges whose endpoints carry different labels.
double cut_weight(const WeightedGraph& graph, std::span<const int> assignment);
double cut_weight(const WeightedGraph& graph, const Partition& partition);

/// Graphviz undirected graph. Node names default to the node index.
std::string export_dot(const WeightedGraph& graph,
                       const std::optional<std::vector<std::string>>& labels =
                           std::nullopt);

}  // namespace qdist
