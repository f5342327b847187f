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

#include "qdist/wbcp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "qdist/error.hpp"

namespace qdist {

namespace {

long long as_count(double w) { return std::llround(w); }

class PlanBuilder {
 public:
  PlanBuilder(const Circuit& circuit, const std::vector<int>& capacities,
              std::size_t window_length, int swap_weight)
      : m_(capacities.size()) {
    plan_.num_qubits = circuit.num_qubits();
    plan_.capacities = capacities;
    plan_.window_length = window_length;
    plan_.swap_weight = swap_weight;
    plan_.pairwise_epr.assign(m_, std::vector<long long>(m_, 0));
  }

  void add_window(std::span<const Gate> all_two_qubit, std::size_t begin,
                  std::size_t end, const Partition& partition,
                  const std::optional<Partition>& prev) {
    PlanWindow w{begin, end, partition, {}, {}};
    if (prev) {
      for (int q = 0; q < partition.num_nodes(); ++q) {
        const int from = prev->part_of(q);
        const int to = partition.part_of(q);
        if (from == to) continue;
        w.moves.push_back({q, from, to});
        charge(from, to, 1);
      }
    }
    w.nonlocal.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      const Gate& g = all_two_qubit[i];
      const int pa = partition.part_of(g.qubits[0]);
      const int pb = partition.part_of(g.qubits[1]);
      w.nonlocal.push_back(pa != pb);
      if (pa != pb) charge(pa, pb, gate_cost(g, plan_.swap_weight));
    }
    plan_.windows.push_back(std::move(w));
  }

  ExecutionPlan finish() { return std::move(plan_); }

 private:
  void charge(int a, int b, long long amount) {
    plan_.pairwise_epr[a][b] += amount;
    plan_.pairwise_epr[b][a] += amount;
    plan_.total_ec += amount;
  }

  std::size_t m_;
  ExecutionPlan plan_;
};

}  // namespace

ExecutionPlan run_baseline(const Circuit& circuit, const std::vector<int>& capacities,
                           const WbcpOptions& options) {
  check_capacities(capacities, circuit.num_qubits());
  const std::vector<Gate> gates = circuit.two_qubit_gates();
  const WeightedGraph g =
      build_interaction_graph(gates, circuit.num_qubits(), options.swap_weight);
  const Partition p = kl_kway(g, capacities, std::nullopt, options.kl);
  PlanBuilder builder(circuit, capacities, std::max<std::size_t>(gates.size(), 1),
                      options.swap_weight);
  builder.add_window(gates, 0, gates.size(), p, std::nullopt);
  return builder.finish();
}

ExecutionPlan run_wbcp(const Circuit& circuit, const std::vector<int>& capacities,
                       std::size_t window_length, const WbcpOptions& options) {
  if (window_length < 1) throw DomainError("window length must be at least 1");
  check_capacities(capacities, circuit.num_qubits());
  const int n = circuit.num_qubits();
  const std::vector<Gate> gates = circuit.two_qubit_gates();
  const std::size_t total = gates.size();
  const std::size_t windows =
      total == 0 ? 1 : (total + window_length - 1) / window_length;

  KlOptions warm = options.kl;
  warm.restarts = 1;

  PlanBuilder builder(circuit, capacities, window_length, options.swap_weight);
  std::optional<Partition> prev;
  for (std::size_t w = 0; w < windows; ++w) {
    const std::size_t begin = w * window_length;
    const std::size_t end = std::min(total, begin + window_length);
    const std::span<const Gate> block(gates.data() + begin, end - begin);
    const WeightedGraph plain = build_interaction_graph(block, n, options.swap_weight);

    if (!prev) {
      const Partition first = kl_kway(plain, capacities, std::nullopt, options.kl);
      builder.add_window(gates, begin, end, first, std::nullopt);
      prev = first;
      continue;
    }
    const long long stay = as_count(cut_weight(plain, *prev));
    Partition next = *prev;
    // With nothing remote under the old placement KL finds no positive gain,
    // so the warm start would come back unchanged.
    if (stay > 0) {
      const WeightedGraph biased =
          build_window_graph(block, *prev, n, options.swap_weight);
      Partition candidate = kl_kway(biased, capacities, prev, warm);
      const long long move =
          as_count(cut_weight(plain, candidate)) + hamming_distance(*prev, candidate);
      if (move <= stay) next = std::move(candidate);
    }
    builder.add_window(gates, begin, end, next, prev);
    prev = std::move(next);
  }
  return builder.finish();
}

std::vector<std::size_t> default_window_lengths(std::size_t two_qubit_gates,
                                                std::optional<std::size_t> max_length) {
  if (two_qubit_gates == 0) return {1};
  std::size_t upper = (two_qubit_gates + 3) / 4;
  if (max_length) upper = std::min(upper, *max_length);
  std::vector<std::size_t> out;
  for (std::size_t l = 1; l <= upper; ++l) out.push_back(l);
  if (out.empty() || out.back() != two_qubit_gates) out.push_back(two_qubit_gates);
  return out;
}

SweepReport sweep_windows(const Circuit& circuit, const std::vector<int>& capacities,
                          const std::optional<std::vector<std::size_t>>& lengths,
                          const WbcpOptions& options) {
  check_capacities(capacities, circuit.num_qubits());
  std::vector<std::size_t> ls =
      lengths ? *lengths : default_window_lengths(circuit.two_qubit_count());
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  if (ls.empty()) throw DomainError("sweep needs at least one window length");
  if (ls.front() < 1) throw DomainError("window length must be at least 1");

  std::vector<long long> ec(ls.size(), 0);
  std::optional<ExecutionPlan> best;
  std::size_t best_index = 0;
  std::mutex best_mutex;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < ls.size(); i = next++) {
      ExecutionPlan plan = run_wbcp(circuit, capacities, ls[i], options);
      ec[i] = plan.total_ec;
      std::lock_guard lock(best_mutex);
      if (!best || plan.total_ec < best->total_ec ||
          (plan.total_ec == best->total_ec && i < best_index)) {
        best = std::move(plan);
        best_index = i;
      }
    }
  };
  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, ls.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  SweepReport report;
  for (std::size_t i = 0; i < ls.size(); ++i) report.points.push_back({ls[i], ec[i]});
  report.best_window_length = ls[best_index];
  report.best_ec = best->total_ec;
  report.best_plan = std::move(*best);
  return report;
}

std::vector<std::string> validate_plan(const Circuit& circuit,
                                       const ExecutionPlan& plan) {
  std::vector<std::string> bad;
  const int n = circuit.num_qubits();
  const std::vector<Gate> gates = circuit.two_qubit_gates();
  const std::size_t m = plan.capacities.size();

  if (plan.num_qubits != n) {
    bad.push_back("num_qubits: plan has " + std::to_string(plan.num_qubits) +
                  ", circuit has " + std::to_string(n));
    return bad;
  }
  if (plan.windows.empty()) {
    bad.push_back("windows: plan has no windows");
    return bad;
  }
  if (plan.window_length < 1) bad.push_back("windows: window length is zero");

  std::size_t expect_begin = 0;
  long long recomputed = 0;
  std::vector<std::vector<long long>> pairs(m, std::vector<long long>(m, 0));
  auto charge = [&](int a, int b, long long amount) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= m ||
        static_cast<std::size_t>(b) >= m) {
      return;
    }
    pairs[a][b] += amount;
    pairs[b][a] += amount;
    recomputed += amount;
  };

  for (std::size_t w = 0; w < plan.windows.size(); ++w) {
    const PlanWindow& win = plan.windows[w];
    const std::string tag = "window " + std::to_string(w) + ": ";
    const Partition& part = win.partition;

    if (win.gate_begin != expect_begin || win.gate_end < win.gate_begin ||
        win.gate_end > gates.size()) {
      bad.push_back("windows: " + tag + "gate range does not continue the previous window");
      return bad;
    }
    const std::size_t len = win.gate_end - win.gate_begin;
    const bool last = w + 1 == plan.windows.size();
    if (len > plan.window_length || (!last && len != plan.window_length)) {
      bad.push_back("windows: " + tag + "holds " + std::to_string(len) +
                    " gates, window length is " + std::to_string(plan.window_length));
    }
    expect_begin = win.gate_end;

    if (part.num_nodes() != n ||
        !std::equal(part.capacities().begin(), part.capacities().end(),
                    plan.capacities.begin(), plan.capacities.end())) {
      bad.push_back("capacities: " + tag + "partition does not match the plan's QPUs");
      return bad;
    }
    for (int p = 0; p < static_cast<int>(m); ++p) {
      if (part.part_size(p) > plan.capacities[p]) {
        bad.push_back("capacities: " + tag + "QPU " + std::to_string(p) + " over capacity");
      }
    }

    if (w == 0) {
      if (!win.moves.empty()) bad.push_back("moves: " + tag + "first window cannot move qubits");
    } else {
      std::vector<int> expect(plan.windows[w - 1].partition.assignment().begin(),
                              plan.windows[w - 1].partition.assignment().end());
      for (const MoveEvent& mv : win.moves) {
        if (mv.qubit < 0 || mv.qubit >= n) {
          bad.push_back("moves: " + tag + "qubit out of range");
          continue;
        }
        if (mv.from == mv.to) {
          bad.push_back("moves: " + tag + "qubit " + std::to_string(mv.qubit) +
                        " moves onto its own QPU");
        }
        if (expect[mv.qubit] != mv.from) {
          bad.push_back("moves: " + tag + "qubit " + std::to_string(mv.qubit) +
                        " does not start on QPU " + std::to_string(mv.from));
        }
        expect[mv.qubit] = mv.to;
        charge(mv.from, mv.to, 1);
      }
      if (!std::equal(expect.begin(), expect.end(), part.assignment().begin())) {
        bad.push_back("moves: " + tag + "recorded moves do not produce the window's placement");
      }
    }

    if (win.nonlocal.size() != len) {
      bad.push_back("label: " + tag + "label count does not match gate count");
      continue;
    }
    for (std::size_t i = 0; i < len; ++i) {
      const Gate& g = gates[win.gate_begin + i];
      const int pa = part.part_of(g.qubits[0]);
      const int pb = part.part_of(g.qubits[1]);
      if (win.nonlocal[i] != (pa != pb)) {
        bad.push_back("label: " + tag + "gate " + std::to_string(win.gate_begin + i) +
                      (win.nonlocal[i] ? " marked non-local but its qubits share QPU "
                                       : " marked local but its qubits sit on QPUs ") +
                      std::to_string(pa) + (pa != pb ? "/" + std::to_string(pb) : ""));
      }
      if (pa != pb) charge(pa, pb, gate_cost(g, plan.swap_weight));
    }
  }
  if (expect_begin != gates.size()) {
    bad.push_back("windows: windows cover " + std::to_string(expect_begin) + " of " +
                  std::to_string(gates.size()) + " two-qubit gates");
  }
  if (recomputed != plan.total_ec) {
    bad.push_back("total_ec: recorded " + std::to_string(plan.total_ec) +
                  ", recomputed " + std::to_string(recomputed));
  }
  if (plan.pairwise_epr != pairs) {
    bad.push_back("pairwise_epr: matrix does not match the recorded moves and remote gates");
  }
  return bad;
}

WeightedGraph demand_graph(const ExecutionPlan& plan) {
  const int m = static_cast<int>(plan.capacities.size());
  WeightedGraph g(m);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      g.add_weight(a, b, static_cast<double>(plan.pairwise_epr[a][b]));
    }
  }
  return g;
}

long long dp_optimum(const Circuit& circuit, const std::vector<int>& capacities,
                     int swap_weight) {
  const int n = circuit.num_qubits();
  check_capacities(capacities, n);
  const std::vector<Gate> gates = circuit.two_qubit_gates();
  if (n > 6 || gates.size() > 10 || capacities.size() > 2) {
    throw TooLargeError("dp_optimum is limited to 6 qubits, 10 two-qubit gates, 2 QPUs");
  }
  if (gates.empty()) return 0;

  const int m = static_cast<int>(capacities.size());
  std::vector<std::vector<int>> states;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  auto enumerate = [&](auto&& self, int q) -> void {
    if (q == n) {
      std::vector<int> load(capacities.size(), 0);
      for (int p : cur) ++load[p];
      for (int p = 0; p < m; ++p) {
        if (load[p] > capacities[p]) return;
      }
      states.push_back(cur);
      return;
    }
    for (int p = 0; p < m; ++p) {
      cur[q] = p;
      self(self, q + 1);
    }
  };
  enumerate(enumerate, 0);

  auto gate_price = [&](const Gate& g, const std::vector<int>& s) -> long long {
    return s[g.qubits[0]] != s[g.qubits[1]] ? gate_cost(g, swap_weight) : 0;
  };
  auto moved = [&](const std::vector<int>& a, const std::vector<int>& b) {
    long long d = 0;
    for (int q = 0; q < n; ++q) d += a[q] != b[q];
    return d;
  };

  std::vector<long long> cost(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) cost[s] = gate_price(gates[0], states[s]);
  for (std::size_t t = 1; t < gates.size(); ++t) {
    std::vector<long long> next(states.size(), std::numeric_limits<long long>::max());
    for (std::size_t s = 0; s < states.size(); ++s) {
      for (std::size_t r = 0; r < states.size(); ++r) {
        next[s] = std::min(next[s], cost[r] + moved(states[r], states[s]));
      }
      next[s] += gate_price(gates[t], states[s]);
    }
    cost = std::move(next);
  }
  return *std::min_element(cost.begin(), cost.end());
}

}  // namespace qdist
