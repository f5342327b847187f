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


// qdist: partition circuits across QPUs, plan distributed QFTs and map EPR
// demand onto a network.

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdist/circuit.hpp"
#include "qdist/error.hpp"
#include "qdist/graph.hpp"
#include "qdist/io.hpp"
#include "qdist/netmap.hpp"
#include "qdist/partition.hpp"
#include "qdist/qftplan.hpp"
#include "qdist/wbcp.hpp"

namespace {

using namespace qdist;

constexpr int kUsageError = 1;
constexpr int kValidationError = 2;

// Thrown when a produced artifact fails its own validator.
struct ValidationFailure {
  std::vector<std::string> violations;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("QDIST_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::uint64_t seed = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, seed);
  if (ec != std::errc() || ptr != end) throw DomainError("QDIST_SEED must be an unsigned integer");
  return seed;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    T value{};
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw DomainError(std::string("bad ") + what + " list: " + text);
    }
    out.push_back(value);
  }
  if (out.empty()) throw DomainError(std::string("empty ") + what + " list");
  return out;
}

// Capacity flags shared by the circuit commands.
struct QpuFlags {
  std::string capacities;
  int balanced = 0;

  void attach(CLI::App* cmd) {
    auto* caps = cmd->add_option("--capacities", capacities,
                                 "Comma-separated qubits per QPU, e.g. 4,4");
    auto* bal = cmd->add_option("--balanced", balanced,
                                "Split the qubits over this many QPUs, larger ones first");
    caps->excludes(bal);
  }

  std::vector<int> resolve(int num_qubits) const {
    if (!capacities.empty()) return parse_capacities(capacities);
    if (balanced > 0) return balanced_capacities(num_qubits, balanced);
    throw DomainError("give --capacities or --balanced");
  }
};

struct PartitionFlags {
  std::uint64_t seed = 0;
  int restarts = 8;
  int swap_weight = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Seed for restarts (default: $QDIST_SEED or 0)");
    cmd->add_option("--restarts", restarts, "KL starting partitions per placement")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--swap-weight", swap_weight, "EPR pairs charged for a remote SWAP")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }

  WbcpOptions options() const {
    WbcpOptions o;
    o.kl.seed = seed;
    o.kl.restarts = restarts;
    o.swap_weight = swap_weight;
    return o;
  }

  std::string header() const {
    return "seed=" + std::to_string(seed) + " restarts=" + std::to_string(restarts) +
           " swap_weight=" + std::to_string(swap_weight);
  }
};

void require_valid(std::vector<std::string> violations) {
  if (!violations.empty()) throw ValidationFailure{std::move(violations)};
}

int run_partition(const std::string& path, const QpuFlags& qpus, const PartitionFlags& pf,
                  const std::string& mode, std::size_t window, const std::string& output) {
  const Circuit circuit = read_circuit_file(path);
  const std::vector<int> caps = qpus.resolve(circuit.num_qubits());
  ExecutionPlan plan;
  if (mode == "baseline") {
    plan = run_baseline(circuit, caps, pf.options());
  } else {
    if (window == 0) throw DomainError("--mode wbcp needs --window");
    plan = run_wbcp(circuit, caps, window, pf.options());
  }
  require_valid(validate_plan(circuit, plan));
  if (!output.empty()) write_output(output, plan_to_json(plan).dump(2) + "\n");
  std::cout << "EC=" << plan.total_ec << "\n";
  return 0;
}

int run_sweep(const std::string& path, const QpuFlags& qpus, const PartitionFlags& pf,
              std::size_t max_l, const std::string& output, const std::string& plan_out) {
  const Circuit circuit = read_circuit_file(path);
  const std::vector<int> caps = qpus.resolve(circuit.num_qubits());
  std::optional<std::size_t> limit;
  if (max_l > 0) limit = max_l;
  const SweepReport report = sweep_windows(
      circuit, caps, default_window_lengths(circuit.two_qubit_count(), limit), pf.options());
  require_valid(validate_plan(circuit, report.best_plan));
  const std::string best = "best window_length=" + std::to_string(report.best_window_length) +
                           " ec=" + std::to_string(report.best_ec);
  const std::string csv = sweep_to_csv(report, pf.header());
  if (output.empty()) {
    std::cout << csv << "# " << best << "\n";
  } else {
    write_output(output, csv);
    std::cout << best << "\n";
  }
  if (!plan_out.empty()) write_output(plan_out, plan_to_json(report.best_plan).dump(2) + "\n");
  return 0;
}

int run_validate(const std::string& circuit_path, const std::string& plan_path) {
  const Circuit circuit = read_circuit_file(circuit_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(plan_path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(plan_path + ": " + e.what(), 0);
  }
  require_valid(validate_plan(circuit, plan_from_json(doc)));
  std::cout << "valid\n";
  return 0;
}

int run_qft(int n, int m, const std::string& phase2, const std::string& output) {
  QftPlan plan;
  int formula = 0;
  if (m == 2 && phase2 == "cat") {
    plan = plan_qft_two(n);
    formula = epr_two(n);
  } else {
    plan = plan_qft_multi(n, m, phase2 == "cat" ? QftPhase2::kCat : QftPhase2::kTeleport);
    formula = epr_multi(n, m);
  }
  require_valid(validate_qft_plan(n, plan));
  if (!output.empty()) write_output(output, qft_plan_to_json(plan).dump(2) + "\n");
  const int neumann = epr_neumann(n, m);
  std::cout << "n,m,epr_used,epr_formula,epr_neumann\n"
            << n << ',' << m << ',' << plan.epr_used << ',' << formula << ',' << neumann
            << "\n"
            << plan.epr_used << " vs " << neumann << "\n";
  return 0;
}

int run_map(const std::string& topology_path, const std::string& demand_path,
            const std::string& plan_path, bool heuristic, int iterations, std::uint64_t seed,
            const std::string& lp_out, const std::string& output) {
  const WeightedGraph topology = read_graph_file(topology_path);
  WeightedGraph demand;
  if (!plan_path.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_text_file(plan_path));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(plan_path + ": " + e.what(), 0);
    }
    demand = demand_graph(plan_from_json(doc));
  } else if (!demand_path.empty()) {
    demand = read_graph_file(demand_path);
  } else {
    throw DomainError("give --demand or --from-plan");
  }
  if (!lp_out.empty()) write_output(lp_out, IlpModel(topology, demand).to_lp());
  if (!heuristic && topology.num_nodes() > kExactMappingLimit) {
    throw DomainError("topology has " + std::to_string(topology.num_nodes()) +
                      " nodes; exact mapping stops at " + std::to_string(kExactMappingLimit) +
                      " (use --heuristic)");
  }
  const Mapping mapping = heuristic ? solve_annealing(topology, demand, seed, iterations)
                                    : solve_exact(topology, demand);
  write_output(output, mapping_to_json(mapping).dump(2) + "\n");
  return 0;
}

Circuit generate(const std::string& kind, int n, std::uint64_t seed, double p, int layers,
                 int depth) {
  if (kind == "qft") return gen_qft(n);
  if (kind == "qaoa") return gen_qaoa(n, p, layers, seed);
  if (kind == "qv") return gen_qv(n, depth > 0 ? depth : n, seed);
  throw DomainError("unknown circuit kind: " + kind);
}

int run_bench(const std::string& suite, const std::string& sizes_text,
              const std::string& parts_text, const std::string& seeds_text,
              const PartitionFlags& pf, std::size_t max_l, const std::string& output) {
  std::string sizes_default = suite == "qft" ? "16,32,48,64" : "8,12,16,20";
  const auto sizes = parse_list<int>(sizes_text.empty() ? sizes_default : sizes_text, "size");
  const auto parts = parse_list<int>(parts_text, "partition");
  const auto seeds = parse_list<std::uint64_t>(
      seeds_text.empty() ? std::to_string(pf.seed) : seeds_text, "seed");
  if (suite != "qft" && suite != "qaoa" && suite != "qv") {
    throw DomainError("unknown suite: " + suite);
  }
  std::optional<std::size_t> limit;
  if (max_l > 0) limit = max_l;

  std::ostringstream out;
  out << "# suite=" << suite << " restarts=" << pf.restarts
      << " swap_weight=" << pf.swap_weight << "\n";
  out << "suite,size,partitions,seed,num_qubits,two_qubit_gates,baseline_ec,wbcp_ec,best_l\n";
  for (int size : sizes) {
    for (int m : parts) {
      for (std::uint64_t seed : seeds) {
        const Circuit c = generate(suite, size, seed, 0.5, 1, 0);
        const std::vector<int> caps = balanced_capacities(c.num_qubits(), m);
        WbcpOptions opts = pf.options();
        opts.kl.seed = seed;
        const ExecutionPlan base = run_baseline(c, caps, opts);
        const SweepReport sweep = sweep_windows(
            c, caps, default_window_lengths(c.two_qubit_count(), limit), opts);
        require_valid(validate_plan(c, base));
        require_valid(validate_plan(c, sweep.best_plan));
        out << suite << ',' << size << ',' << m << ',' << seed << ',' << c.num_qubits() << ','
            << c.two_qubit_count() << ',' << base.total_ec << ',' << sweep.best_ec << ','
            << sweep.best_window_length << "\n";
      }
    }
  }
  write_output(output, out.str());
  return 0;
}

int run_skew(const std::string& betas_text, int nodes, int num_seeds, int trials, int l_max,
             std::uint64_t first_seed, const std::string& output) {
  const auto betas = parse_list<double>(betas_text, "beta");
  if (num_seeds < 1) throw DomainError("--seeds must be positive");
  std::vector<std::uint64_t> seeds;
  for (int s = 0; s < num_seeds; ++s) seeds.push_back(first_seed + s);
  SkewConfig cfg;
  cfg.nodes = nodes;
  cfg.trials = trials;
  cfg.l_max = l_max;
  std::ostringstream out;
  out << "# nodes=" << nodes << " trials=" << trials << " l_max=" << l_max
      << " first_seed=" << first_seed << "\n";
  out << "beta_topology,beta_demand,seed,improvement_pct\n";
  for (const SkewRow& r : skew_experiment(betas, betas, seeds, cfg)) {
    out << fmt(r.beta_topology) << ',' << fmt(r.beta_demand) << ',' << r.seed << ','
        << fmt(r.improvement_pct) << "\n";
  }
  write_output(output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed quantum circuit planning: partitioning, QFT schedules, mapping"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::string circuit_path;
  std::string output;
  QpuFlags qpus;
  PartitionFlags pf;
  pf.seed = seed;

  auto* partition = app.add_subcommand("partition", "Place a circuit's qubits and report EC");
  std::string mode = "baseline";
  std::size_t window = 0;
  partition->add_option("circuit", circuit_path, "Gate list or OpenQASM 2.0 file")->required();
  qpus.attach(partition);
  pf.attach(partition);
  partition->add_option("--mode", mode, "baseline or wbcp")
      ->check(CLI::IsMember({"baseline", "wbcp"}))
      ->capture_default_str();
  partition->add_option("--window", window, "Two-qubit gates per window (wbcp)");
  partition->add_option("-o,--output", output, "Write the plan JSON here");

  auto* sweep = app.add_subcommand("sweep", "EC for each window length as CSV");
  std::size_t max_l = 0;
  std::string plan_out;
  sweep->add_option("circuit", circuit_path, "Gate list or OpenQASM 2.0 file")->required();
  qpus.attach(sweep);
  pf.attach(sweep);
  sweep->add_option("--max-l", max_l, "Largest short window (default: a quarter of the gates)");
  sweep->add_option("-o,--output", output, "Write the CSV here instead of stdout");
  sweep->add_option("--plan", plan_out, "Write the best plan JSON here");

  auto* qft = app.add_subcommand("qft", "Distributed QFT schedule and EPR comparison");
  int qft_n = 0;
  int qft_m = 2;
  std::string phase2 = "cat";
  qft->add_option("-n,--qubits", qft_n, "Qubit count")->required();
  qft->add_option("-m,--qpus", qft_m, "QPU count (even)")->capture_default_str();
  qft->add_option("--phase2", phase2, "Second-loop realization: cat or teleport")
      ->check(CLI::IsMember({"cat", "teleport"}))
      ->capture_default_str();
  qft->add_option("-o,--output", output, "Write the schedule JSON here");

  auto* map = app.add_subcommand("map", "Map EPR demand onto a network topology");
  std::string topology_path;
  std::string demand_path;
  std::string from_plan;
  std::string lp_out;
  bool heuristic = false;
  int iterations = 100000;
  map->add_option("--topology", topology_path, "Link weights: edge list or JSON")->required();
  auto* demand_opt = map->add_option("--demand", demand_path, "Demand graph: edge list or JSON");
  map->add_option("--from-plan", from_plan, "Take the demand from a partition plan JSON")
      ->excludes(demand_opt);
  map->add_flag("--heuristic", heuristic, "Use annealing instead of the exact solver");
  map->add_option("--iterations", iterations, "Annealing steps")->capture_default_str();
  map->add_option("--seed", seed, "Annealing seed (default: $QDIST_SEED or 0)");
  map->add_option("--lp", lp_out, "Also write the linearized model in LP format");
  map->add_option("-o,--output", output, "Write the mapping JSON here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Baseline vs best-window EC over a circuit suite");
  std::string suite = "qft";
  std::string sizes;
  std::string parts = "2";
  std::string seeds;
  bench->add_option("--suite", suite, "qft, qaoa or qv")
      ->check(CLI::IsMember({"qft", "qaoa", "qv"}))
      ->capture_default_str();
  bench->add_option("--sizes", sizes, "Qubit counts (default: 16,32,48,64 or 8,12,16,20)");
  bench->add_option("--partitions", parts, "Balanced QPU counts")->capture_default_str();
  bench->add_option("--seeds", seeds, "Generator and partitioner seeds (default: --seed)");
  pf.attach(bench);
  bench->add_option("--max-l", max_l, "Largest short window");
  bench->add_option("-o,--output", output, "Write the CSV here instead of stdout");

  auto* gen = app.add_subcommand("gen", "Write a generated circuit as a gate list");
  std::string kind;
  int gen_n = 0;
  double prob = 0.5;
  int layers = 1;
  int depth = 0;
  gen->add_option("kind", kind, "qft, qaoa or qv")->required();
  gen->add_option("-n,--qubits", gen_n, "Qubit count")->required();
  gen->add_option("--seed", seed, "Generator seed (default: $QDIST_SEED or 0)");
  gen->add_option("--p", prob, "QAOA edge probability")->capture_default_str();
  gen->add_option("--layers", layers, "QAOA layers")->capture_default_str();
  gen->add_option("--depth", depth, "QV layers (default: n)");
  gen->add_option("-o,--output", output, "Write here instead of stdout");

  auto* skew = app.add_subcommand("skew", "Mapping gain over random placement vs Beta skew");
  std::string betas = "0.2,1,5";
  int nodes = 6;
  int num_seeds = 100;
  int trials = 200;
  int l_max = 100;
  skew->add_option("--betas", betas, "Beta parameters for both graphs")->capture_default_str();
  skew->add_option("--nodes", nodes, "QPUs per instance")->capture_default_str();
  skew->add_option("--seeds", num_seeds, "Instances per beta pair")->capture_default_str();
  skew->add_option("--trials", trials, "Random assignments per instance")->capture_default_str();
  skew->add_option("--l-max", l_max, "Largest demand weight")->capture_default_str();
  skew->add_option("--seed", seed, "First seed (default: $QDIST_SEED or 0)");
  skew->add_option("-o,--output", output, "Write here instead of stdout");

  auto* validate = app.add_subcommand("validate", "Check a plan JSON against its circuit");
  std::string plan_in;
  validate->add_option("circuit", circuit_path, "Gate list or OpenQASM 2.0 file")->required();
  validate->add_option("plan", plan_in, "Plan JSON from partition or sweep")->required();

  auto* graph = app.add_subcommand("graph", "Interaction graph of a circuit in DOT");
  int graph_swap_weight = 1;
  graph->add_option("circuit", circuit_path, "Gate list or OpenQASM 2.0 file")->required();
  graph->add_option("--swap-weight", graph_swap_weight, "Weight of a SWAP")->capture_default_str();
  graph->add_option("-o,--output", output, "Write here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*partition) return run_partition(circuit_path, qpus, pf, mode, window, output);
    if (*sweep) return run_sweep(circuit_path, qpus, pf, max_l, output, plan_out);
    if (*validate) return run_validate(circuit_path, plan_in);
    if (*qft) return run_qft(qft_n, qft_m, phase2, output);
    if (*map) {
      return run_map(topology_path, demand_path, from_plan, heuristic, iterations, seed, lp_out,
                     output);
    }
    if (*bench) return run_bench(suite, sizes, parts, seeds, pf, max_l, output);
    if (*gen) {
      write_output(output, render_gatelist(generate(kind, gen_n, seed, prob, layers, depth)));
      return 0;
    }
    if (*skew) return run_skew(betas, nodes, num_seeds, trials, l_max, seed, output);
    if (*graph) {
      const Circuit c = read_circuit_file(circuit_path);
      write_output(output, export_dot(build_interaction_graph(c, graph_swap_weight)));
      return 0;
    }
  } catch (const ValidationFailure& f) {
    for (const std::string& v : f.violations) std::cerr << "invalid: " << v << "\n";
    return kValidationError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
