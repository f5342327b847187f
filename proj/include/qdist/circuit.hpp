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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdist {

enum class GateKind { kH, kX, kZ, kRz, kCx, kCr, kSwap };

std::string_view gate_name(GateKind kind);
bool is_two_qubit(GateKind kind);

struct Gate {
  GateKind kind = GateKind::kH;
  /// Control first for CX and CR. qubits[1] is unused for one-qubit gates.
  std::array<int, 2> qubits{0, -1};
  /// Radians; meaningful for RZ and CR only.
  double angle = 0.0;

  int arity() const { return is_two_qubit(kind) ? 2 : 1; }
  friend bool operator==(const Gate&, const Gate&) = default;

  static Gate h(int q) { return {GateKind::kH, {q, -1}, 0.0}; }
  static Gate x(int q) { return {GateKind::kX, {q, -1}, 0.0}; }
  static Gate z(int q) { return {GateKind::kZ, {q, -1}, 0.0}; }
  static Gate rz(int q, double a) { return {GateKind::kRz, {q, -1}, a}; }
  static Gate cx(int c, int t) { return {GateKind::kCx, {c, t}, 0.0}; }
  static Gate cr(int c, int t, double a) { return {GateKind::kCr, {c, t}, a}; }
  static Gate swap(int a, int b) { return {GateKind::kSwap, {a, b}, 0.0}; }
};

/// Ordered gate list over a fixed number of logical qubits. Immutable once
/// built; the constructor enforces index bounds and distinct two-qubit
/// operands.
class Circuit {
 public:
  Circuit(int num_qubits, std::vector<Gate> gates);

  int num_qubits() const { return num_qubits_; }
  std::span<const Gate> gates() const { return gates_; }
  std::size_t two_qubit_count() const;
  /// The two-qubit gates in execution order.
  std::vector<Gate> two_qubit_gates() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

enum class CircuitFormat { kGatelist, kQasm2 };

/// Picks the format from a file extension (".qasm" -> QASM, else gatelist).
CircuitFormat format_for_path(std::string_view path);

/// Parses circuit text. Throws ParseError with the offending line.
Circuit parse_circuit(std::string_view text, CircuitFormat format);
Circuit read_circuit_file(const std::string& path);

/// Gatelist text with a "qubits N" header; parse_circuit reads it back
/// exactly (angles are written with round-trip precision).
std::string render_gatelist(const Circuit& circuit);

Circuit gen_qft(int n);
Circuit gen_qaoa(int n, double edge_prob, int layers, std::uint64_t seed);
Circuit gen_qv(int n, int depth, std::uint64_t seed);

}  // namespace qdist
