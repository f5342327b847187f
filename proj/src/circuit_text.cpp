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

// Gatelist and OPENQASM 2.0 subset readers, gatelist writer.

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>

#include "qdist/circuit.hpp"
#include "qdist/error.hpp"

namespace qdist {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<long long> to_int(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

int qubit_operand(std::string_view tok, std::size_t line) {
  auto v = to_int(tok);
  if (!v || *v < 0 || *v > 1'000'000'000) {
    throw ParseError("bad qubit index '" + std::string(tok) + "'", line);
  }
  return static_cast<int>(*v);
}

Circuit finish(int num_qubits, std::vector<Gate> gates,
               const std::vector<std::size_t>& lines) {
  if (gates.empty()) throw ParseError("empty circuit", 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (int k = 0; k < gates[i].arity(); ++k) {
      if (gates[i].qubits[k] >= num_qubits) {
        throw ParseError("qubit index " + std::to_string(gates[i].qubits[k]) +
                             " out of range for " + std::to_string(num_qubits) +
                             " qubits",
                         lines[i]);
      }
    }
    if (gates[i].arity() == 2 && gates[i].qubits[0] == gates[i].qubits[1]) {
      throw ParseError("two-qubit gate with repeated operand", lines[i]);
    }
  }
  return Circuit(num_qubits, std::move(gates));
}

Circuit parse_gatelist(std::string_view text) {
  std::vector<Gate> gates;
  std::vector<std::size_t> lines;
  std::optional<int> declared;
  int max_index = -1;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    std::string name(tok[0]);
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto want = [&](std::size_t count) {
      if (tok.size() != count) {
        throw ParseError("'" + name + "' expects " + std::to_string(count - 1) +
                             " operands",
                         line_no);
      }
    };
    auto angle = [&](std::size_t i) {
      auto v = to_real(tok[i]);
      if (!v) throw ParseError("bad angle '" + std::string(tok[i]) + "'", line_no);
      return *v;
    };

    if (name == "qubits") {
      want(2);
      if (declared) throw ParseError("duplicate qubits header", line_no);
      auto v = to_int(tok[1]);
      if (!v || *v < 1 || *v > 1'000'000'000) {
        throw ParseError("bad qubit count", line_no);
      }
      declared = static_cast<int>(*v);
      continue;
    }

    Gate g;
    if (name == "h" || name == "x" || name == "z") {
      want(2);
      const int q = qubit_operand(tok[1], line_no);
      g = name == "h" ? Gate::h(q) : name == "x" ? Gate::x(q) : Gate::z(q);
    } else if (name == "rz") {
      want(3);
      g = Gate::rz(qubit_operand(tok[1], line_no), angle(2));
    } else if (name == "cx") {
      want(3);
      g = Gate::cx(qubit_operand(tok[1], line_no), qubit_operand(tok[2], line_no));
    } else if (name == "cr") {
      want(4);
      g = Gate::cr(qubit_operand(tok[1], line_no), qubit_operand(tok[2], line_no),
                   angle(3));
    } else if (name == "swap") {
      want(3);
      g = Gate::swap(qubit_operand(tok[1], line_no),
                     qubit_operand(tok[2], line_no));
    } else {
      throw ParseError("unsupported gate '" + name + "'", line_no);
    }
    for (int k = 0; k < g.arity(); ++k) max_index = std::max(max_index, g.qubits[k]);
    gates.push_back(g);
    lines.push_back(line_no);
  }
  return finish(declared.value_or(max_index + 1), std::move(gates), lines);
}

// Angle expressions: numbers, pi, + - * /, unary minus and parentheses.
class ExprParser {
 public:
  ExprParser(std::string_view s, std::size_t line) : s_(s), line_(line) {}

  double parse() {
    const double v = expr();
    skip();
    if (i_ != s_.size()) fail();
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() {
    throw ParseError("bad angle expression '" + std::string(s_) + "'", line_);
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      if (eat('*')) v *= factor();
      else if (eat('/')) v /= factor();
      else return v;
    }
  }
  double factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail();
      return v;
    }
    skip();
    if (s_.substr(i_).starts_with("pi")) {
      i_ += 2;
      return std::numbers::pi;
    }
    std::size_t j = i_;
    while (j < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '.' ||
            s_[j] == 'e' || s_[j] == 'E' ||
            ((s_[j] == '-' || s_[j] == '+') && j > i_ &&
             (s_[j - 1] == 'e' || s_[j - 1] == 'E')))) {
      ++j;
    }
    auto v = to_real(s_.substr(i_, j - i_));
    if (!v) fail();
    i_ = j;
    return *v;
  }

  std::string_view s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

Circuit parse_qasm2(std::string_view text) {
  // Strip // comments while keeping newlines for line numbers.
  std::string clean;
  clean.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) clean.push_back('\n');
      continue;
    }
    clean.push_back(text[i]);
  }

  std::vector<Gate> gates;
  std::vector<std::size_t> lines;
  bool saw_header = false;
  std::string reg;
  int reg_size = 0;
  std::size_t line_no = 1;
  std::size_t pos = 0;
  const std::string_view src(clean);
  while (pos < src.size()) {
    const std::size_t semi = src.find(';', pos);
    const std::string_view raw =
        src.substr(pos, semi == std::string_view::npos ? src.size() - pos : semi - pos);
    std::size_t stmt_line = line_no;
    for (char c : raw) {
      if (c == '\n') ++line_no;
    }
    // Line of the first non-blank character.
    for (char c : raw) {
      if (c == '\n') ++stmt_line;
      else if (!std::isspace(static_cast<unsigned char>(c))) break;
    }
    const std::string_view stmt = trim(raw);
    if (semi == std::string_view::npos) {
      if (!stmt.empty()) throw ParseError("missing ';'", stmt_line);
      break;
    }
    pos = semi + 1;
    if (stmt.empty()) continue;

    if (!saw_header) {
      const auto tok = split_ws(stmt);
      if (tok.size() != 2 || tok[0] != "OPENQASM" || tok[1] != "2.0") {
        throw ParseError("expected 'OPENQASM 2.0;' header", stmt_line);
      }
      saw_header = true;
      continue;
    }
    if (stmt.starts_with("include")) {
      if (trim(stmt.substr(7)) != "\"qelib1.inc\"") {
        throw ParseError("only qelib1.inc may be included", stmt_line);
      }
      continue;
    }

    // name[(params)] operands
    std::size_t k = 0;
    while (k < stmt.size() &&
           (std::isalnum(static_cast<unsigned char>(stmt[k])) || stmt[k] == '_')) {
      ++k;
    }
    const std::string name(stmt.substr(0, k));
    std::string_view rest = trim(stmt.substr(k));
    std::optional<double> param;
    if (!rest.empty() && rest.front() == '(') {
      const std::size_t close = rest.rfind(')');
      if (close == std::string_view::npos) throw ParseError("unbalanced '('", stmt_line);
      param = ExprParser(rest.substr(1, close - 1), stmt_line).parse();
      rest = trim(rest.substr(close + 1));
    }

    if (name == "qreg") {
      if (!reg.empty()) throw ParseError("only one qreg is supported", stmt_line);
      const std::size_t lb = rest.find('[');
      const std::size_t rb = rest.find(']');
      if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb) {
        throw ParseError("bad qreg declaration", stmt_line);
      }
      reg = std::string(trim(rest.substr(0, lb)));
      auto size = to_int(trim(rest.substr(lb + 1, rb - lb - 1)));
      if (reg.empty() || !size || *size < 1 || *size > 1'000'000'000) {
        throw ParseError("bad qreg declaration", stmt_line);
      }
      reg_size = static_cast<int>(*size);
      continue;
    }

    int arity = 0;
    bool needs_param = false;
    GateKind kind{};
    if (name == "h") { kind = GateKind::kH; arity = 1; }
    else if (name == "x") { kind = GateKind::kX; arity = 1; }
    else if (name == "z") { kind = GateKind::kZ; arity = 1; }
    else if (name == "rz") { kind = GateKind::kRz; arity = 1; needs_param = true; }
    else if (name == "cx") { kind = GateKind::kCx; arity = 2; }
    else if (name == "cp" || name == "crz") { kind = GateKind::kCr; arity = 2; needs_param = true; }
    else if (name == "swap") { kind = GateKind::kSwap; arity = 2; }
    else throw ParseError("unsupported statement '" + name + "'", stmt_line);

    if (reg.empty()) throw ParseError("gate before qreg declaration", stmt_line);
    if (needs_param != param.has_value()) {
      throw ParseError("'" + name + (needs_param ? "' needs" : "' takes no") +
                           " angle parameter",
                       stmt_line);
    }

    std::vector<int> ops;
    std::size_t p = 0;
    while (p <= rest.size()) {
      const std::size_t comma = std::min(rest.find(',', p), rest.size());
      const std::string_view op = trim(rest.substr(p, comma - p));
      p = comma + 1;
      const std::size_t lb = op.find('[');
      const std::size_t rb = op.find(']');
      if (lb == std::string_view::npos || rb != op.size() - 1) {
        throw ParseError("bad operand '" + std::string(op) + "'", stmt_line);
      }
      if (trim(op.substr(0, lb)) != reg) {
        throw ParseError("unknown register in '" + std::string(op) + "'", stmt_line);
      }
      const int q = qubit_operand(trim(op.substr(lb + 1, rb - lb - 1)), stmt_line);
      if (q >= reg_size) {
        throw ParseError("qubit index " + std::to_string(q) + " out of range",
                         stmt_line);
      }
      ops.push_back(q);
    }
    if (static_cast<int>(ops.size()) != arity) {
      throw ParseError("'" + name + "' expects " + std::to_string(arity) +
                           " operands",
                       stmt_line);
    }
    Gate g{kind, {ops[0], arity == 2 ? ops[1] : -1}, param.value_or(0.0)};
    gates.push_back(g);
    lines.push_back(stmt_line);
  }
  if (!saw_header) throw ParseError("empty circuit", 0);
  return finish(reg_size, std::move(gates), lines);
}

void append_real(std::string& out, double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, p);
}

}  // namespace

Circuit parse_circuit(std::string_view text, CircuitFormat format) {
  return format == CircuitFormat::kQasm2 ? parse_qasm2(text) : parse_gatelist(text);
}

std::string render_gatelist(const Circuit& circuit) {
  std::string out = "qubits " + std::to_string(circuit.num_qubits()) + "\n";
  for (const Gate& g : circuit.gates()) {
    out += gate_name(g.kind);
    for (int k = 0; k < g.arity(); ++k) {
      out += ' ';
      out += std::to_string(g.qubits[k]);
    }
    if (g.kind == GateKind::kRz || g.kind == GateKind::kCr) {
      out += ' ';
      append_real(out, g.angle);
    }
    out += '\n';
  }
  return out;
}

}  // namespace qdist
