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

#include <cmath>
#include <numbers>
#include <numeric>

#include "qdist/circuit.hpp"
#include "qdist/error.hpp"
#include "qdist/rng.hpp"

namespace qdist {

Circuit gen_qft(int n) {
  if (n < 1) throw DomainError("gen_qft needs n >= 1");
  std::vector<Gate> gates;
  gates.reserve(static_cast<std::size_t>(n) * (n + 1) / 2 + n / 2);
  for (int i = 0; i < n; ++i) {
    gates.push_back(Gate::h(i));
    for (int j = i + 1; j < n; ++j) {
      gates.push_back(Gate::cr(j, i, std::ldexp(std::numbers::pi, -(j - i))));
    }
  }
  for (int i = 0; i < n / 2; ++i) gates.push_back(Gate::swap(i, n - 1 - i));
  return Circuit(n, std::move(gates));
}

// Erdos-Renyi problem graph; each edge becomes an RZZ (CX, RZ, CX) per layer
// followed by a one-qubit mixer layer.
Circuit gen_qaoa(int n, double edge_prob, int layers, std::uint64_t seed) {
  if (n < 2) throw DomainError("gen_qaoa needs n >= 2");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) {
    throw DomainError("gen_qaoa edge probability must lie in (0, 1]");
  }
  if (layers < 1) throw DomainError("gen_qaoa needs layers >= 1");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.uniform() < edge_prob) edges.emplace_back(u, v);
    }
  }
  if (edges.empty()) {
    throw DomainError("gen_qaoa sampled a graph with no edges");
  }
  std::vector<Gate> gates;
  for (int layer = 0; layer < layers; ++layer) {
    const double gamma = rng.uniform() * std::numbers::pi;
    const double beta = rng.uniform() * std::numbers::pi;
    for (auto [u, v] : edges) {
      gates.push_back(Gate::cx(u, v));
      gates.push_back(Gate::rz(v, 2.0 * gamma));
      gates.push_back(Gate::cx(u, v));
    }
    for (int q = 0; q < n; ++q) gates.push_back(Gate::rz(q, 2.0 * beta));
  }
  return Circuit(n, std::move(gates));
}

// Random pairings per layer; each pair gets a three-CX SU(4) template.
Circuit gen_qv(int n, int depth, std::uint64_t seed) {
  if (n < 2) throw DomainError("gen_qv needs n >= 2");
  if (depth < 1) throw DomainError("gen_qv needs depth >= 1");
  Rng rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<Gate> gates;
  for (int layer = 0; layer < depth; ++layer) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<int>(perm));
    for (int k = 0; k + 1 < n; k += 2) {
      const int a = perm[k];
      const int b = perm[k + 1];
      gates.push_back(Gate::cx(a, b));
      gates.push_back(Gate::rz(a, rng.uniform() * 2.0 * std::numbers::pi));
      gates.push_back(Gate::rz(b, rng.uniform() * 2.0 * std::numbers::pi));
      gates.push_back(Gate::cx(b, a));
      gates.push_back(Gate::rz(b, rng.uniform() * 2.0 * std::numbers::pi));
      gates.push_back(Gate::cx(a, b));
    }
  }
  return Circuit(n, std::move(gates));
}

}  // namespace qdist
