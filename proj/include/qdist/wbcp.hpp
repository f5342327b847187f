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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdist/circuit.hpp"
#include "qdist/graph.hpp"
#include "qdist/kl.hpp"
#include "qdist/partition.hpp"

namespace qdist {

struct MoveEvent {
  int qubit = 0;
  int from = 0;
  int to = 0;
  friend bool operator==(const MoveEvent&, const MoveEvent&) = default;
};

/// A block of consecutive two-qubit gates executed under one qubit placement.
struct PlanWindow {
  /// Half-open range over the circuit's two-qubit gates (not all gates).
  std::size_t gate_begin = 0;
  std::size_t gate_end = 0;
  Partition partition;
  /// Qubits teleported at the start of this window. Empty for the first.
  std::vector<MoveEvent> moves;
  /// One entry per gate in the range; true when its qubits sit on different
  /// QPUs and the gate is teleported.
  std::vector<bool> nonlocal;

  friend bool operator==(const PlanWindow&, const PlanWindow&) = default;
};

struct ExecutionPlan {
  int num_qubits = 0;
  std::vector<int> capacities;
  std::size_t window_length = 0;
  int swap_weight = 1;
  std::vector<PlanWindow> windows;
  /// EPR pairs consumed: remote gate costs plus one per move.
  long long total_ec = 0;
  /// Symmetric QPU x QPU matrix of EPR pairs; the upper triangle sums to
  /// total_ec.
  std::vector<std::vector<long long>> pairwise_epr;

  friend bool operator==(const ExecutionPlan&, const ExecutionPlan&) = default;
};

struct WbcpOptions {
  KlOptions kl;
  int swap_weight = 1;
  /// Worker threads for sweeps; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Static placement from KL on the whole interaction graph; every crossing
/// gate is teleported.
ExecutionPlan run_baseline(const Circuit& circuit, const std::vector<int>& capacities,
                           const WbcpOptions& options = {});

/// Window-based partitioning with windows of `window_length` two-qubit gates.
///
/// The first window is placed by KL on its interaction graph. Each later
/// window re-partitions a graph whose same-QPU pairs weigh double, warm
/// started from the previous placement. The new placement is adopted when
/// its remote-gate count plus the number of moved qubits does not exceed the
/// remote-gate count of staying put; the smaller figure is charged.
ExecutionPlan run_wbcp(const Circuit& circuit, const std::vector<int>& capacities,
                       std::size_t window_length, const WbcpOptions& options = {});

struct SweepPoint {
  std::size_t window_length = 0;
  long long ec = 0;
};

struct SweepReport {
  std::vector<SweepPoint> points;  // ascending window length
  std::size_t best_window_length = 0;
  long long best_ec = 0;
  ExecutionPlan best_plan;
};

/// Default lengths: 1..ceil(N/4) plus N, where N is the two-qubit gate count.
std::vector<std::size_t> default_window_lengths(std::size_t two_qubit_gates,
                                                std::optional<std::size_t> max_length =
                                                    std::nullopt);

/// Runs every length (concurrently) and keeps the cheapest plan, preferring
/// the shorter window on ties.
SweepReport sweep_windows(const Circuit& circuit, const std::vector<int>& capacities,
                          const std::optional<std::vector<std::size_t>>& lengths,
                          const WbcpOptions& options = {});

/// Every broken plan invariant as a readable message; empty when valid.
std::vector<std::string> validate_plan(const Circuit& circuit,
                                       const ExecutionPlan& plan);

/// QPUs as nodes, EPR pairs per QPU pair as weights.
WeightedGraph demand_graph(const ExecutionPlan& plan);

/// Exact minimum EPR cost when qubits may move before any two-qubit gate.
/// Limited to 6 qubits, 10 two-qubit gates and 2 QPUs.
long long dp_optimum(const Circuit& circuit, const std::vector<int>& capacities,
                     int swap_weight = 1);

}  // namespace qdist
