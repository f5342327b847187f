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


#include "qdist/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qdist/error.hpp"

namespace qdist {

using nlohmann::json;

json plan_to_json(const ExecutionPlan& plan) {
  json windows = json::array();
  for (const PlanWindow& w : plan.windows) {
    json moves = json::array();
    for (const MoveEvent& mv : w.moves) moves.push_back({mv.qubit, mv.from, mv.to});
    json labels = json::array();
    for (bool remote : w.nonlocal) labels.push_back(remote ? "nonlocal" : "local");
    windows.push_back({{"gates", {w.gate_begin, w.gate_end}},
                       {"assignment", w.partition.assignment()},
                       {"moves", std::move(moves)},
                       {"labels", std::move(labels)}});
  }
  return {{"num_qubits", plan.num_qubits},
          {"capacities", plan.capacities},
          {"window_length", plan.window_length},
          {"swap_weight", plan.swap_weight},
          {"total_ec", plan.total_ec},
          {"pairwise_epr", plan.pairwise_epr},
          {"windows", std::move(windows)}};
}

ExecutionPlan plan_from_json(const json& doc) {
  try {
    ExecutionPlan plan;
    plan.num_qubits = doc.at("num_qubits").get<int>();
    plan.capacities = doc.at("capacities").get<std::vector<int>>();
    plan.window_length = doc.at("window_length").get<std::size_t>();
    plan.swap_weight = doc.value("swap_weight", 1);
    plan.total_ec = doc.at("total_ec").get<long long>();
    plan.pairwise_epr = doc.at("pairwise_epr").get<std::vector<std::vector<long long>>>();
    const std::size_t m = plan.capacities.size();
    if (plan.pairwise_epr.size() != m) throw ParseError("pairwise_epr must be QPU x QPU", 0);
    for (const auto& row : plan.pairwise_epr) {
      if (row.size() != m) throw ParseError("pairwise_epr must be QPU x QPU", 0);
    }
    for (const json& w : doc.at("windows")) {
      const auto range = w.at("gates").get<std::vector<std::size_t>>();
      if (range.size() != 2) throw ParseError("window gates must be [begin, end]", 0);
      PlanWindow win{range[0], range[1],
                     Partition(w.at("assignment").get<std::vector<int>>(), plan.capacities),
                     {},
                     {}};
      for (const json& mv : w.at("moves")) {
        const auto t = mv.get<std::vector<int>>();
        if (t.size() != 3) throw ParseError("moves are [qubit, from, to]", 0);
        win.moves.push_back({t[0], t[1], t[2]});
      }
      for (const json& label : w.at("labels")) {
        const auto s = label.get<std::string>();
        if (s != "local" && s != "nonlocal") throw ParseError("unknown gate label " + s, 0);
        win.nonlocal.push_back(s == "nonlocal");
      }
      plan.windows.push_back(std::move(win));
    }
    return plan;
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan JSON: ") + e.what(), 0);
  } catch (const InfeasibleError& e) {
    throw ParseError(std::string("plan JSON: ") + e.what(), 0);
  } catch (const DomainError& e) {
    throw ParseError(std::string("plan JSON: ") + e.what(), 0);
  }
}

std::string sweep_to_csv(const SweepReport& report, std::string_view comment) {
  std::ostringstream out;
  std::istringstream lines{std::string(comment)};
  for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
  out << "window_length,ec\n";
  for (const SweepPoint& p : report.points) out << p.window_length << ',' << p.ec << '\n';
  return out.str();
}

namespace {

std::string_view op_name(QftOp op) {
  switch (op) {
    case QftOp::kH: return "h";
    case QftOp::kCr: return "cr";
    case QftOp::kTeleport: return "teleport";
    case QftOp::kCatEntangle: return "cat_entangle";
    case QftOp::kCatDisentangle: return "cat_disentangle";
    case QftOp::kSwap: return "swap";
  }
  return "?";
}

}  // namespace

json qft_plan_to_json(const QftPlan& plan) {
  json events = json::array();
  for (const QftEvent& e : plan.events) {
    json ev = {{"op", op_name(e.op)}, {"phase", e.phase}, {"step", e.step}};
    if (e.op == QftOp::kCr) {
      ev["control"] = e.control;
      ev["target"] = e.qubit;
    } else {
      ev["qubit"] = e.qubit;
    }
    if (e.to < 0) {
      ev["qpu"] = e.from;
    } else {
      ev["from"] = e.from;
      ev["to"] = e.to;
    }
    events.push_back(std::move(ev));
  }
  json layout = json::array();
  for (const QftSlot& s : plan.final_layout) layout.push_back({s.qpu, s.slot});
  return {{"n", plan.n},       {"m", plan.m},
          {"k", plan.k},       {"capacity", plan.capacity},
          {"epr_used", plan.epr_used}, {"events", std::move(events)},
          {"final_layout", std::move(layout)}};
}

json mapping_to_json(const Mapping& mapping) {
  return {{"assignment", mapping.assignment},
          {"objective", mapping.objective},
          {"method", mapping.method}};
}

namespace {

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

WeightedGraph assemble(int declared, const std::vector<Edge>& edges) {
  int n = declared;
  if (n < 0) {
    n = 0;
    for (const Edge& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  }
  WeightedGraph g(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw ParseError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                           " exceeds the declared node count",
                       0);
    }
    g.add_weight(e.u, e.v, e.weight);
  }
  return g;
}

}  // namespace

WeightedGraph parse_edge_list(std::string_view text) {
  int declared = -1;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "nodes") {
      if (tok.size() != 2 || !parse_number(tok[1], declared) || declared < 0) {
        throw ParseError("expected \"nodes N\"", line_no);
      }
      continue;
    }
    Edge e;
    if (tok.size() != 3 || !parse_number(tok[0], e.u) || !parse_number(tok[1], e.v) ||
        !parse_number(tok[2], e.weight)) {
      throw ParseError("expected \"u v weight\"", line_no);
    }
    if (e.u < 0 || e.v < 0 || e.u == e.v || !(e.weight >= 0.0)) {
      throw ParseError("edge needs distinct non-negative nodes and weight >= 0", line_no);
    }
    edges.push_back(e);
  }
  return assemble(declared, edges);
}

WeightedGraph graph_from_json(const json& doc) {
  try {
    const int declared = doc.contains("nodes") ? doc.at("nodes").get<int>() : -1;
    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
      Edge edge;
      if (e.is_array()) {
        if (e.size() != 3) throw ParseError("graph JSON edges are [u, v, weight]", 0);
        edge = {e[0].get<int>(), e[1].get<int>(), e[2].get<double>()};
      } else {
        edge = {e.at("u").get<int>(), e.at("v").get<int>(), e.at("weight").get<double>()};
      }
      if (edge.u < 0 || edge.v < 0 || edge.u == edge.v || !(edge.weight >= 0.0)) {
        throw ParseError("graph JSON edge needs distinct nodes and weight >= 0", 0);
      }
      edges.push_back(edge);
    }
    return assemble(declared, edges);
  } catch (const json::exception& e) {
    throw ParseError(std::string("graph JSON: ") + e.what(), 0);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

WeightedGraph read_graph_file(const std::string& path) {
  const std::string text = read_text_file(path);
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw ParseError(path + ": " + e.what(), 0);
    }
    return graph_from_json(doc);
  }
  return parse_edge_list(text);
}

}  // namespace qdist
