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

#include "qdist/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "qdist/error.hpp"

namespace qdist {

WeightedGraph::WeightedGraph(int num_nodes) : num_nodes_(num_nodes) {
  if (num_nodes < 0) throw DomainError("negative node count");
}

void WeightedGraph::add_weight(int u, int v, double w) {
  if (u < 0 || v < 0 || u >= num_nodes_ || v >= num_nodes_) {
    throw DomainError("edge endpoint out of range");
  }
  if (u == v) throw DomainError("self-loops are not allowed");
  if (!(w >= 0.0) || !std::isfinite(w)) {
    throw DomainError("edge weights must be finite and non-negative");
  }
  if (w == 0.0) return;
  if (u > v) std::swap(u, v);
  weights_[{u, v}] += w;
}

double WeightedGraph::weight(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = weights_.find({u, v});
  return it == weights_.end() ? 0.0 : it->second;
}

std::vector<Edge> WeightedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(weights_.size());
  for (const auto& [key, w] : weights_) out.push_back({key.first, key.second, w});
  return out;
}

double WeightedGraph::total_weight() const {
  double sum = 0.0;
  for (const auto& [key, w] : weights_) sum += w;
  return sum;
}

std::vector<double> WeightedGraph::adjacency() const {
  const auto n = static_cast<std::size_t>(num_nodes_);
  std::vector<double> a(n * n, 0.0);
  for (const auto& [key, w] : weights_) {
    a[key.first * n + key.second] = w;
    a[key.second * n + key.first] = w;
  }
  return a;
}

int gate_cost(const Gate& gate, int swap_weight) {
  if (!is_two_qubit(gate.kind)) return 0;
  return gate.kind == GateKind::kSwap ? swap_weight : 1;
}

WeightedGraph build_interaction_graph(std::span<const Gate> gates,
                                      int num_qubits, int swap_weight) {
  if (swap_weight < 0) throw DomainError("swap weight must be non-negative");
  WeightedGraph g(num_qubits);
  for (const Gate& gate : gates) {
    if (!is_two_qubit(gate.kind)) continue;
    g.add_weight(gate.qubits[0], gate.qubits[1], gate_cost(gate, swap_weight));
  }
  return g;
}

WeightedGraph build_interaction_graph(const Circuit& circuit, int swap_weight) {
  return build_interaction_graph(circuit.gates(), circuit.num_qubits(),
                                 swap_weight);
}

WeightedGraph build_window_graph(std::span<const Gate> window_gates,
                                 const Partition& prev, int num_qubits,
                                 int swap_weight) {
  if (prev.num_nodes() != num_qubits) {
    throw DomainError("previous partition does not cover every qubit");
  }
  WeightedGraph g(num_qubits);
  for (const Gate& gate : window_gates) {
    if (!is_two_qubit(gate.kind)) continue;
    const int a = gate.qubits[0];
    const int b = gate.qubits[1];
    const int factor = prev.part_of(a) == prev.part_of(b) ? 2 : 1;
    g.add_weight(a, b, factor * gate_cost(gate, swap_weight));
  }
  return g;
}

double cut_weight(const WeightedGraph& graph, std::span<const int> assignment) {
  if (assignment.size() != static_cast<std::size_t>(graph.num_nodes())) {
    throw DomainError("partition does not cover every graph node");
  }
  double cut = 0.0;
  for (const Edge& e : graph.edges()) {
    if (assignment[e.u] != assignment[e.v]) cut += e.weight;
  }
  return cut;
}

double cut_weight(const WeightedGraph& graph, const Partition& partition) {
  return cut_weight(graph, partition.assignment());
}

namespace {

std::string format_weight(double w) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, p);
}

}  // namespace

std::string export_dot(const WeightedGraph& graph,
                       const std::optional<std::vector<std::string>>& labels) {
  if (labels && labels->size() != static_cast<std::size_t>(graph.num_nodes())) {
    throw DomainError("label count does not match node count");
  }
  auto name = [&](int v) {
    if (!labels) return std::to_string(v);
    const std::string& s = (*labels)[v];
    const bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
    return plain ? s : "\"" + s + "\"";
  };
  std::string out = "graph G {\n";
  for (int v = 0; v < graph.num_nodes(); ++v) out += "  " + name(v) + ";\n";
  for (const Edge& e : graph.edges()) {
    out += "  " + name(e.u) + " -- " + name(e.v) + " [weight=" +
           format_weight(e.weight) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace qdist
