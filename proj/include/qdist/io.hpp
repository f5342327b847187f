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

// Text formats: plans and mappings as JSON, sweeps as CSV, graphs as edge
// lists or JSON.

#include <string>
#include <string_view>

#include "json.hpp"
#include "qdist/graph.hpp"
#include "qdist/netmap.hpp"
#include "qdist/qftplan.hpp"
#include "qdist/wbcp.hpp"

namespace qdist {

nlohmann::json plan_to_json(const ExecutionPlan& plan);
/// Throws ParseError on missing fields or a partition that breaks its
/// capacities.
ExecutionPlan plan_from_json(const nlohmann::json& doc);

/// "window_length,ec" rows after the given "#" comment lines.
std::string sweep_to_csv(const SweepReport& report, std::string_view comment);

nlohmann::json qft_plan_to_json(const QftPlan& plan);
nlohmann::json mapping_to_json(const Mapping& mapping);

/// Edge list: one "u v weight" per line, "#" comments, and an optional
/// "nodes N" line. Without it the node count is one past the largest index.
/// Repeated pairs accumulate.
WeightedGraph parse_edge_list(std::string_view text);
/// {"nodes": N, "edges": [[u, v, w], ...]}; "nodes" may be omitted.
WeightedGraph graph_from_json(const nlohmann::json& doc);
/// Picks JSON for a ".json" extension, the edge list otherwise.
WeightedGraph read_graph_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace qdist
