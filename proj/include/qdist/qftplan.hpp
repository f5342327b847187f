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

#include <string>
#include <vector>

namespace qdist {

enum class QftOp { kH, kCr, kTeleport, kCatEntangle, kCatDisentangle, kSwap };

/// One step of a distributed QFT schedule. Qubits are 0-based and use the
/// circuit numbering of gen_qft: CR(control c -> target t) has c > t.
struct QftEvent {
  QftOp op = QftOp::kH;
  /// H target, CR target, teleported qubit or cat-shared qubit.
  int qubit = 0;
  /// CR control; -1 otherwise.
  int control = -1;
  /// QPU of a local gate, or the source QPU of a teleport / cat share.
  int from = 0;
  /// Destination of a teleport or cat share; -1 for local gates.
  int to = -1;
  /// Bookkeeping for per-loop EPR accounting. Phase 0 is local work that
  /// precedes or follows the communication loops.
  int phase = 0;
  int step = 0;

  friend bool operator==(const QftEvent&, const QftEvent&) = default;
};

struct QftSlot {
  int qpu = 0;
  int slot = 0;
  friend bool operator==(const QftSlot&, const QftSlot&) = default;
};

/// How the second loop of the multi-QPU schedule reaches controls on the
/// lower-numbered QPUs.
enum class QftPhase2 {
  /// Cat-entangle the target once per remote QPU; one EPR pair each.
  kCat,
  /// Teleport the target down the chain and back home; one EPR per hop.
  kTeleport,
};

struct QftPlan {
  int n = 0;
  int m = 0;
  int k = 0;
  /// Computational qubits available per QPU.
  int capacity = 0;
  std::vector<QftEvent> events;
  /// Teleports plus cat entanglements.
  int epr_used = 0;
  /// Indexed by qubit.
  std::vector<QftSlot> final_layout;

  friend bool operator==(const QftPlan&, const QftPlan&) = default;
};

/// Two-QPU schedule for even n: n EPR pairs, at most n/2 + 1 resident
/// qubits per QPU, output left in bit-reversed order without SWAPs.
QftPlan plan_qft_two(int n);

/// Schedule for an even number of QPUs m with n divisible by m. With the cat
/// second loop it consumes n*m/2 EPR pairs using n/m + 1 qubits per QPU.
QftPlan plan_qft_multi(int n, int m, QftPhase2 phase2 = QftPhase2::kCat);

int epr_two(int n);
int epr_multi(int n, int m);
/// Count for the earlier two-QPU method generalized to m QPUs, which pays
/// for the final SWAP layer.
int epr_neumann(int n, int m);

/// Replays the events. Each violation starts with one of "coverage:",
/// "colocation:", "capacity:", "swap:", "order:", "layout:", "epr:" or
/// "event:". Empty when the plan is a valid QFT(n).
std::vector<std::string> validate_qft_plan(int n, const QftPlan& plan);

/// EPR pairs consumed by the events tagged (phase, step).
int epr_in_step(const QftPlan& plan, int phase, int step);

}  // namespace qdist
