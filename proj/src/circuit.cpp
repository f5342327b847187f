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

#include "qdist/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qdist/error.hpp"

namespace qdist {

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH:
      return "h";
    case GateKind::kX:
      return "x";
    case GateKind::kZ:
      return "z";
    case GateKind::kRz:
      return "rz";
    case GateKind::kCx:
      return "cx";
    case GateKind::kCr:
      return "cr";
    case GateKind::kSwap:
      return "swap";
  }
  return "?";
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::kCx || kind == GateKind::kCr ||
         kind == GateKind::kSwap;
}

Circuit::Circuit(int num_qubits, std::vector<Gate> gates)
    : num_qubits_(num_qubits), gates_(std::move(gates)) {
  if (num_qubits_ < 1) throw DomainError("circuit needs at least one qubit");
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    for (int k = 0; k < g.arity(); ++k) {
      if (g.qubits[k] < 0 || g.qubits[k] >= num_qubits_) {
        throw DomainError("gate " + std::to_string(i) + ": qubit index " +
                          std::to_string(g.qubits[k]) + " out of range");
      }
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
      throw DomainError("gate " + std::to_string(i) +
                        ": two-qubit gate on a single qubit");
    }
  }
}

std::size_t Circuit::two_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(),
      [](const Gate& g) { return is_two_qubit(g.kind); }));
}

std::vector<Gate> Circuit::two_qubit_gates() const {
  std::vector<Gate> out;
  out.reserve(two_qubit_count());
  std::copy_if(gates_.begin(), gates_.end(), std::back_inserter(out),
               [](const Gate& g) { return is_two_qubit(g.kind); });
  return out;
}

CircuitFormat format_for_path(std::string_view path) {
  return path.ends_with(".qasm") ? CircuitFormat::kQasm2
                                 : CircuitFormat::kGatelist;
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str(), format_for_path(path));
}

}  // namespace qdist
