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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qdist/circuit.hpp"
#include "qdist/graph.hpp"
#include "qdist/io.hpp"
#include "qdist/kl.hpp"
#include "qdist/netmap.hpp"
#include "qdist/partition.hpp"
#include "qdist/qftplan.hpp"
#include "qdist/rng.hpp"
#include "qdist/wbcp.hpp"

using namespace qdist;

namespace {

using Clock = std::chrono::steady_clock;

// What a criterion produced: a verdict, a short explanation, and every
// CSV/JSON artifact it emitted (compared across runs for determinism).
struct Outcome {
  bool pass = true;
  std::string detail;
  std::string artifact;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_runtime(Outcome& out, Clock::time_point start, double limit) {
  const double took = seconds_since(start);
  if (took >= limit) {
    std::ostringstream s;
    s << "took " << took << " s, limit " << limit << " s";
    out.fail(s.str());
  }
}

Outcome qft_two_qpu() {
  const auto start = Clock::now();
  Outcome out;
  for (int n = 2; n <= 64; n += 2) {
    const QftPlan plan = plan_qft_two(n);
    if (plan.epr_used != n) out.fail("n=" + std::to_string(n) + " used " + std::to_string(plan.epr_used));
    if (!validate_qft_plan(n, plan).empty()) out.fail("n=" + std::to_string(n) + " invalid plan");
    for (const QftEvent& e : plan.events) {
      if (e.op == QftOp::kSwap) out.fail("n=" + std::to_string(n) + " has a SWAP");
    }
    out.artifact += qft_plan_to_json(plan).dump() + "\n";
  }
  check_runtime(out, start, 1.0);
  if (out.pass) out.detail = "n = 2..64 even, epr_used == n";
  return out;
}

Outcome qft_multi_qpu() {
  const auto start = Clock::now();
  Outcome out;
  for (int m : {2, 4, 6, 8}) {
    for (int k = 1; k <= 8; ++k) {
      const int n = k * m;
      const std::string tag = "n=" + std::to_string(n) + " m=" + std::to_string(m);
      const QftPlan plan = plan_qft_multi(n, m);
      const int bound = k * m * m / 2;
      if (plan.epr_used != n * m / 2) out.fail(tag + " used " + std::to_string(plan.epr_used));
      if (plan.epr_used != epr_multi(n, m)) out.fail(tag + " disagrees with epr_multi");
      if (plan.epr_used > bound) out.fail(tag + " above k*m^2/2");
      if (plan.epr_used >= epr_neumann(n, m)) out.fail(tag + " not below n*m/2 + n/2");
      if (epr_neumann(n, m) != n * m / 2 + n / 2) out.fail(tag + " epr_neumann formula");
      if (!validate_qft_plan(n, plan).empty()) out.fail(tag + " invalid plan");
      out.artifact += qft_plan_to_json(plan).dump() + "\n";
    }
  }
  check_runtime(out, start, 5.0);
  if (out.pass) out.detail = "m in {2,4,6,8}, k = 1..8, epr_used == n*m/2";
  return out;
}

struct Named {
  std::string suite;
  int size = 0;
  std::uint64_t seed = 0;
  Circuit circuit;
};

std::vector<Named> dominance_corpus() {
  std::vector<Named> corpus;
  for (int n : {8, 16, 24, 32, 48, 64}) corpus.push_back({"qft", n, 0, gen_qft(n)});
  for (int n : {8, 12, 16, 20}) {
    for (std::uint64_t s = 0; s < 5; ++s) corpus.push_back({"qaoa", n, s, gen_qaoa(n, 0.5, 1, s)});
  }
  for (int n : {4, 6, 8, 10, 12}) {
    for (std::uint64_t s = 0; s < 5; ++s) corpus.push_back({"qv", n, s, gen_qv(n, n, s)});
  }
  return corpus;
}

std::string bench_header() {
  return "suite,size,partitions,seed,num_qubits,two_qubit_gates,baseline_ec,wbcp_ec,best_l\n";
}

std::string bench_row(const Named& c, int parts, const ExecutionPlan& base, const SweepReport& sweep) {
  std::ostringstream s;
  s << c.suite << ',' << c.size << ',' << parts << ',' << c.seed << ',' << c.circuit.num_qubits()
    << ',' << c.circuit.two_qubit_count() << ',' << base.total_ec << ',' << sweep.best_ec << ','
    << sweep.best_window_length << "\n";
  return s.str();
}

Outcome wbcp_dominance() {
  const auto start = Clock::now();
  Outcome out;
  const std::vector<Named> corpus = dominance_corpus();
  if (corpus.size() < 50) out.fail("corpus has only " + std::to_string(corpus.size()) + " circuits");
  out.artifact = bench_header();
  int cases = 0;
  for (const Named& c : corpus) {
    for (int parts : {2, 3, 4}) {
      const std::vector<int> caps = balanced_capacities(c.circuit.num_qubits(), parts);
      const ExecutionPlan base = run_baseline(c.circuit, caps);
      const SweepReport sweep = sweep_windows(c.circuit, caps, std::nullopt);
      const std::string tag = c.suite + std::to_string(c.size) + "/seed" + std::to_string(c.seed) +
                              "/k" + std::to_string(parts);
      const std::size_t n2q = c.circuit.two_qubit_count();
      const bool has_full = std::any_of(sweep.points.begin(), sweep.points.end(),
                                        [&](const SweepPoint& p) { return p.window_length == std::max<std::size_t>(n2q, 1); });
      if (!has_full) out.fail(tag + " sweep skipped l = N");
      if (sweep.best_ec > base.total_ec) out.fail(tag + " sweep above baseline");
      if (!validate_plan(c.circuit, sweep.best_plan).empty()) out.fail(tag + " invalid plan");
      out.artifact += bench_row(c, parts, base, sweep);
      ++cases;
    }
  }
  check_runtime(out, start, 600.0);
  if (out.pass) {
    std::ostringstream s;
    s << corpus.size() << " circuits, " << cases << " cases, sweep <= baseline in all ("
      << std::fixed << std::setprecision(1) << seconds_since(start) << " s)";
    out.detail = s.str();
  }
  return out;
}

Circuit random_small_circuit(int n, int two_qubit, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Gate> gates;
  for (int i = 0; i < two_qubit; ++i) {
    const int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n - 1));
    if (b >= a) ++b;
    if (rng.below(4) == 0) gates.push_back(Gate::h(a));
    gates.push_back(rng.below(7) == 0 ? Gate::swap(a, b) : Gate::cx(a, b));
  }
  return Circuit(n, gates);
}

Outcome oracle_sandwich() {
  const auto start = Clock::now();
  Outcome out;
  constexpr int kInstances = 240;
  for (int i = 0; i < kInstances; ++i) {
    const std::uint64_t seed = mix_seed(4, static_cast<std::uint64_t>(i));
    Rng rng(seed);
    const int n = 2 + static_cast<int>(rng.below(5));
    const int gates = 1 + static_cast<int>(rng.below(10));
    const Circuit c = random_small_circuit(n, gates, seed);
    const std::vector<int> caps =
        i % 3 == 2 && n >= 3 ? std::vector<int>{n - 1, 1} : balanced_capacities(n, 2);
    const long long dp = dp_optimum(c, caps);
    const SweepReport sweep = sweep_windows(c, caps, std::nullopt);
    const ExecutionPlan base = run_baseline(c, caps);
    const double cut = exhaustive_kway(build_interaction_graph(c), caps).cut;
    const std::string tag = "instance " + std::to_string(i);
    if (dp > sweep.best_ec) out.fail(tag + ": dp above sweep");
    if (sweep.best_ec > base.total_ec) out.fail(tag + ": sweep above baseline");
    if (static_cast<double>(base.total_ec) != cut) out.fail(tag + ": baseline is not the min cut");
    out.artifact += std::to_string(dp) + "," + std::to_string(sweep.best_ec) + "," +
                    std::to_string(base.total_ec) + "\n";
  }
  check_runtime(out, start, 120.0);
  if (out.pass) out.detail = std::to_string(kInstances) + " instances, dp <= sweep <= baseline == min cut";
  return out;
}

Outcome qft63_improvement() {
  Outcome out;
  const Named c{"qft", 63, 0, gen_qft(63)};
  const std::vector<int> caps = balanced_capacities(63, 2);
  const ExecutionPlan base = run_baseline(c.circuit, caps);
  const SweepReport sweep = sweep_windows(c.circuit, caps, std::nullopt);
  out.artifact = bench_header() + bench_row(c, 2, base, sweep);
  static bool printed = false;
  if (!std::exchange(printed, true)) std::fputs(out.artifact.c_str(), stdout);
  const double ratio = static_cast<double>(sweep.best_ec) / static_cast<double>(base.total_ec);
  std::ostringstream s;
  s << "wbcp " << sweep.best_ec << " vs baseline " << base.total_ec << ", ratio " << std::fixed
    << std::setprecision(3) << ratio << " (limit 0.6)";
  out.detail = s.str();
  if (!(ratio <= 0.6)) out.fail(s.str());
  return out;
}

WeightedGraph random_graph(int n, std::uint64_t seed, bool integral) {
  Rng rng(seed);
  WeightedGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const double w = integral ? static_cast<double>(rng.below(5)) : rng.uniform();
      if (w != 0.0) g.add_weight(a, b, w);
    }
  }
  return g;
}

// Checks the product identities on one point of the model.
bool identities_hold(const IlpModel& model, const std::vector<double>& p) {
  const int e = model.num_edges();
  for (int i = 0; i < e; ++i) {
    const auto [u1, u2] = model.edges()[i];
    for (int j = 0; j < e; ++j) {
      const auto [v1, v2] = model.edges()[j];
      const double a = p[model.y(u1, v1)] * p[model.y(u2, v2)];
      const double b = p[model.y(u1, v2)] * p[model.y(u2, v1)];
      if (p[model.z1(i, j)] != a || p[model.z2(i, j)] != b) return false;
      if (p[model.x(i, j)] != a + b || p[model.x(i, j)] > 1.0) return false;
    }
  }
  return true;
}

Outcome ilp_exactness() {
  const auto start = Clock::now();
  Outcome out;
  constexpr int kInstances = 50;
  for (int inst = 0; inst < kInstances; ++inst) {
    const std::uint64_t seed = mix_seed(6, static_cast<std::uint64_t>(inst));
    const int n = 2 + inst % 5;
    const int demand_nodes = std::max(2, n - inst % 3);
    const WeightedGraph top = random_graph(n, mix_seed(seed, 1), false);
    const WeightedGraph dem = random_graph(demand_nodes, mix_seed(seed, 2), true);
    const IlpModel model(top, dem);
    const std::string tag = "instance " + std::to_string(inst);

    // Permutation enumeration; demand padded with isolated nodes.
    WeightedGraph padded(n);
    for (const Edge& ed : dem.edges()) padded.add_weight(ed.u, ed.v, ed.weight);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    double perm_best = std::numeric_limits<double>::infinity();
    do {
      double v = 0.0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) v += padded.weight(a, b) * top.weight(sigma[a], sigma[b]);
      }
      perm_best = std::min(perm_best, v);
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    // Every 0/1 y with one topology node per demand row; the constraints
    // must keep exactly the bijections.
    double model_best = std::numeric_limits<double>::infinity();
    long long feasible = 0;
    std::vector<int> choice(n, 0);
    const int e = model.num_edges();
    for (;;) {
      std::vector<double> p(model.num_variables(), 0.0);
      for (int u = 0; u < n; ++u) p[model.y(u, choice[u])] = 1.0;
      bool within = true;
      for (int i = 0; i < e && within; ++i) {
        const auto [u1, u2] = model.edges()[i];
        for (int j = 0; j < e && within; ++j) {
          const auto [v1, v2] = model.edges()[j];
          const double a = p[model.y(u1, v1)] * p[model.y(u2, v2)];
          const double b = p[model.y(u1, v2)] * p[model.y(u2, v1)];
          p[model.z1(i, j)] = a;
          p[model.z2(i, j)] = b;
          p[model.x(i, j)] = a + b;
          within = a + b <= 1.0;
        }
      }
      if (within && model.satisfies(p)) {
        ++feasible;
        model_best = std::min(model_best, model.evaluate(p));
        std::vector<int> seen(n, 0);
        for (int u = 0; u < n; ++u) ++seen[choice[u]];
        if (std::count(seen.begin(), seen.end(), 1) != n) out.fail(tag + ": non-bijection is feasible");
      }
      int u = n - 1;
      while (u >= 0 && ++choice[u] == n) choice[u--] = 0;
      if (u < 0) break;
    }
    long long factorial = 1;
    for (int f = 2; f <= n; ++f) factorial *= f;
    if (feasible != factorial) out.fail(tag + ": feasible count " + std::to_string(feasible));
    if (std::abs(model_best - perm_best) > 1e-9 * std::max(1.0, std::abs(perm_best))) {
      out.fail(tag + ": model optimum differs from permutation optimum");
    }

    // The model's own embedding of each bijection satisfies the identities.
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      const std::vector<double> p = model.point_for(sigma);
      if (!model.satisfies(p) || !identities_hold(model, p)) {
        out.fail(tag + ": z/x identities broken at a feasible point");
        break;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    std::ostringstream row;
    row << std::setprecision(17) << n << ',' << demand_nodes << ',' << model_best << ',' << perm_best << "\n";
    out.artifact += row.str();
  }
  check_runtime(out, start, 60.0);
  if (out.pass) out.detail = std::to_string(kInstances) + " instances, model optimum == permutation optimum";
  return out;
}

Outcome skew_trend() {
  const auto start = Clock::now();
  Outcome out;
  std::vector<std::uint64_t> seeds(100);
  std::iota(seeds.begin(), seeds.end(), 0);
  const SkewConfig config;
  const std::vector<SkewRow> skewed = skew_experiment({0.2}, {0.2}, seeds, config);
  const std::vector<SkewRow> flat = skew_experiment({5.0}, {5.0}, seeds, config);
  const auto mean = [](const std::vector<SkewRow>& rows) {
    double total = 0.0;
    for (const SkewRow& r : rows) total += r.improvement_pct;
    return total / static_cast<double>(rows.size());
  };
  std::ostringstream csv;
  csv << std::setprecision(17) << "beta_topology,beta_demand,seed,improvement_pct\n";
  for (const auto* rows : {&skewed, &flat}) {
    for (const SkewRow& r : *rows) {
      csv << r.beta_topology << ',' << r.beta_demand << ',' << r.seed << ',' << r.improvement_pct << "\n";
    }
  }
  out.artifact = csv.str();

  // Recompute the optimum by enumeration and compare it with every sample.
  for (double beta : {0.2, 5.0}) {
    for (std::uint64_t seed : seeds) {
      const WeightedGraph g = gen_topology(config.nodes, beta, mix_seed(seed, 1));
      const WeightedGraph d = gen_demand(config.nodes, beta, mix_seed(seed, 2), config.l_max);
      const BaselineStats base = random_baseline(g, d, mix_seed(seed, 3), config.trials);
      std::vector<int> sigma(config.nodes);
      std::iota(sigma.begin(), sigma.end(), 0);
      double best = std::numeric_limits<double>::infinity();
      do {
        best = std::min(best, mapping_objective(g, d, sigma));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
      const double exact = solve_exact(g, d).objective;
      const std::string tag = "beta " + std::to_string(beta) + " seed " + std::to_string(seed);
      if (std::abs(exact - best) > 1e-9 * std::max(1.0, best)) out.fail(tag + ": exact solver missed the optimum");
      for (double sample : base.samples) {
        if (exact > sample) out.fail(tag + ": optimum above a random sample");
      }
    }
  }
  for (const auto* rows : {&skewed, &flat}) {
    for (const SkewRow& r : *rows) {
      if (!r.optimum_below_samples) out.fail("seed " + std::to_string(r.seed) + ": row flags a sample below optimum");
    }
  }
  const double m_skewed = mean(skewed);
  const double m_flat = mean(flat);
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << "mean improvement " << m_skewed << "% at beta 0.2 vs "
    << m_flat << "% at beta 5";
  if (!(m_skewed > m_flat)) out.fail(s.str());
  check_runtime(out, start, 120.0);
  if (out.pass) out.detail = s.str();
  return out;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"qft two-QPU cost", qft_two_qpu},
      {"qft multi-QPU cost", qft_multi_qpu},
      {"wbcp dominance", wbcp_dominance},
      {"oracle sandwich", oracle_sandwich},
      {"qft63 improvement", qft63_improvement},
      {"ilp exactness", ilp_exactness},
      {"skew trend", skew_trend},
  };
  std::vector<std::string> artifacts;
  bool all = true;
  int index = 1;
  for (const Criterion& c : criteria) {
    const Outcome o = c.run();
    artifacts.push_back(o.artifact);
    all = all && o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    std::fflush(stdout);
  }

  // Second run of everything with the same seeds; outputs must match bytewise.
  Outcome det;
  std::size_t bytes = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome again = criteria[i].run();
    bytes += again.artifact.size();
    if (again.artifact != artifacts[i]) det.fail(std::string(criteria[i].name) + " output changed between runs");
  }
  if (det.pass) det.detail = std::to_string(bytes) + " bytes of CSV/JSON identical across two runs";
  all = all && det.pass;
  std::printf("%s %d determinism: %s\n", det.pass ? "PASS" : "FAIL", index, det.detail.c_str());
  return all ? 0 : 1;
}
