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


#include "qdist/netmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qdist/error.hpp"
#include "qdist/kernels.hpp"
#include "qdist/rng.hpp"

namespace qdist {

namespace {

// Dense symmetric weights padded to n nodes.
std::vector<double> padded_matrix(const WeightedGraph& g, int n) {
  std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
  for (const Edge& e : g.edges()) {
    out[e.u * n + e.v] = e.weight;
    out[e.v * n + e.u] = e.weight;
  }
  return out;
}

int padded_size(const WeightedGraph& topology, const WeightedGraph& demand) {
  if (demand.num_nodes() > topology.num_nodes()) {
    throw DomainError("demand graph has " + std::to_string(demand.num_nodes()) +
                      " nodes but the topology only " +
                      std::to_string(topology.num_nodes()));
  }
  return topology.num_nodes();
}

void check_assignment(std::span<const int> assignment, int n) {
  if (static_cast<int>(assignment.size()) != n) {
    throw DomainError("assignment must list all " + std::to_string(n) + " nodes");
  }
  std::vector<bool> used(n, false);
  for (int u : assignment) {
    if (u < 0 || u >= n || used[u]) throw DomainError("assignment is not a bijection");
    used[u] = true;
  }
}

// Demand rows against topology rows gathered through the assignment. Only
// pairs v1 < v2 contribute.
class Objective {
 public:
  Objective(const WeightedGraph& topology, const WeightedGraph& demand)
      : n_(padded_size(topology, demand)),
        w_(padded_matrix(topology, n_)),
        l_(padded_matrix(demand, n_)) {}

  int n() const { return n_; }
  double w(int a, int b) const { return w_[a * n_ + b]; }
  double l(int a, int b) const { return l_[a * n_ + b]; }

  double operator()(std::span<const int> sigma) const {
    double total = 0.0;
    for (int v = 0; v + 1 < n_; ++v) {
      const std::size_t tail = n_ - v - 1;
      total += kernels::gather_dot({l_.data() + v * n_ + v + 1, tail},
                                   {w_.data() + sigma[v] * n_, static_cast<std::size_t>(n_)},
                                   sigma.subspan(v + 1, tail));
    }
    return total;
  }

  // Change in objective from exchanging the hosts of demand nodes a and b.
  double swap_delta(std::span<const int> sigma, int a, int b) const {
    double d = 0.0;
    for (int v = 0; v < n_; ++v) {
      if (v == a || v == b) continue;
      d += (l(a, v) - l(b, v)) * (w(sigma[b], sigma[v]) - w(sigma[a], sigma[v]));
    }
    return d;
  }

 private:
  int n_;
  std::vector<double> w_;
  std::vector<double> l_;
};

Mapping make_mapping(const Objective& f, std::vector<int> sigma, std::string method) {
  Mapping m;
  m.objective = f(std::span<const int>(sigma));
  m.assignment = std::move(sigma);
  m.method = std::move(method);
  return m;
}

}  // namespace

double mapping_objective(const WeightedGraph& topology, const WeightedGraph& demand,
                         std::span<const int> assignment) {
  const Objective f(topology, demand);
  check_assignment(assignment, f.n());
  return f(assignment);
}

IlpModel::IlpModel(const WeightedGraph& topology, const WeightedGraph& demand)
    : n_(padded_size(topology, demand)) {
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) edges_.emplace_back(a, b);
  }
  const int e = num_edges();
  objective_.assign(num_variables(), 0.0);
  for (int i = 0; i < e; ++i) {
    const double w = topology.weight(edges_[i].first, edges_[i].second);
    for (int j = 0; j < e; ++j) {
      const auto [v1, v2] = edges_[j];
      const double l = v2 < demand.num_nodes() ? demand.weight(v1, v2) : 0.0;
      objective_[x(i, j)] = w * l;
    }
  }

  using Sense = LinearRow::Sense;
  auto add = [this](std::vector<std::pair<int, double>> terms, Sense sense, double rhs,
                    std::string name) {
    rows_.push_back({std::move(terms), sense, rhs, std::move(name)});
  };
  for (int u = 0; u < n_; ++u) {
    std::vector<std::pair<int, double>> row;
    std::vector<std::pair<int, double>> col;
    for (int v = 0; v < n_; ++v) {
      row.emplace_back(y(u, v), 1.0);
      col.emplace_back(y(v, u), 1.0);
    }
    add(std::move(row), Sense::kEq, 1.0, "ytop_" + std::to_string(u));
    add(std::move(col), Sense::kEq, 1.0, "ydem_" + std::to_string(u));
  }
  for (int i = 0; i < e; ++i) {
    std::vector<std::pair<int, double>> row;
    std::vector<std::pair<int, double>> col;
    for (int j = 0; j < e; ++j) {
      row.emplace_back(x(i, j), 1.0);
      col.emplace_back(x(j, i), 1.0);
    }
    add(std::move(row), Sense::kEq, 1.0, "xtop_" + std::to_string(i));
    add(std::move(col), Sense::kEq, 1.0, "xdem_" + std::to_string(i));
  }
  for (int i = 0; i < e; ++i) {
    const auto [u1, u2] = edges_[i];
    for (int j = 0; j < e; ++j) {
      const auto [v1, v2] = edges_[j];
      const std::string tag = std::to_string(i) + "_" + std::to_string(j);
      add({{x(i, j), 1.0}, {z1(i, j), -1.0}, {z2(i, j), -1.0}}, Sense::kEq, 0.0,
          "split_" + tag);
      const int a = z1(i, j);
      add({{a, 1.0}, {y(u1, v1), -1.0}}, Sense::kLe, 0.0, "z1a_" + tag);
      add({{a, 1.0}, {y(u2, v2), -1.0}}, Sense::kLe, 0.0, "z1b_" + tag);
      add({{a, 1.0}, {y(u1, v1), -1.0}, {y(u2, v2), -1.0}}, Sense::kGe, -1.0, "z1c_" + tag);
      const int b = z2(i, j);
      add({{b, 1.0}, {y(u1, v2), -1.0}}, Sense::kLe, 0.0, "z2a_" + tag);
      add({{b, 1.0}, {y(u2, v1), -1.0}}, Sense::kLe, 0.0, "z2b_" + tag);
      add({{b, 1.0}, {y(u1, v2), -1.0}, {y(u2, v1), -1.0}}, Sense::kGe, -1.0, "z2c_" + tag);
    }
  }
}

std::string IlpModel::variable_name(int var) const {
  const int nn = n_ * n_;
  const int ee = num_edges() * num_edges();
  if (var < nn) return "y_" + std::to_string(var / n_) + "_" + std::to_string(var % n_);
  var -= nn;
  static constexpr const char* kPrefix[] = {"x_", "z1_", "z2_"};
  const int block = var / ee;
  var %= ee;
  return kPrefix[block] + std::to_string(var / num_edges()) + "_" +
         std::to_string(var % num_edges());
}

bool IlpModel::satisfies(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != num_variables()) return false;
  for (double v : point) {
    if (v != 0.0 && v != 1.0) return false;
  }
  for (const LinearRow& r : rows_) {
    double lhs = 0.0;
    for (const auto& [var, coef] : r.terms) lhs += coef * point[var];
    switch (r.sense) {
      case LinearRow::Sense::kEq:
        if (lhs != r.rhs) return false;
        break;
      case LinearRow::Sense::kLe:
        if (lhs > r.rhs) return false;
        break;
      case LinearRow::Sense::kGe:
        if (lhs < r.rhs) return false;
        break;
    }
  }
  return true;
}

double IlpModel::evaluate(std::span<const double> point) const {
  double total = 0.0;
  for (int var = 0; var < num_variables(); ++var) total += objective_[var] * point[var];
  return total;
}

std::vector<double> IlpModel::point_for(std::span<const int> assignment) const {
  check_assignment(assignment, n_);
  std::vector<double> p(num_variables(), 0.0);
  for (int v = 0; v < n_; ++v) p[y(assignment[v], v)] = 1.0;
  auto host = [&](int u, int v) { return p[y(u, v)] == 1.0; };
  for (int i = 0; i < num_edges(); ++i) {
    const auto [u1, u2] = edges_[i];
    for (int j = 0; j < num_edges(); ++j) {
      const auto [v1, v2] = edges_[j];
      const bool straight = host(u1, v1) && host(u2, v2);
      const bool crossed = host(u1, v2) && host(u2, v1);
      p[z1(i, j)] = straight ? 1.0 : 0.0;
      p[z2(i, j)] = crossed ? 1.0 : 0.0;
      p[x(i, j)] = straight || crossed ? 1.0 : 0.0;
    }
  }
  return p;
}

std::string IlpModel::to_lp() const {
  std::ostringstream out;
  out.precision(17);
  out << "Minimize\n obj:";
  bool any = false;
  for (int var = 0; var < num_variables(); ++var) {
    if (objective_[var] == 0.0) continue;
    out << " + " << objective_[var] << ' ' << variable_name(var);
    any = true;
  }
  if (!any) out << " 0 " << variable_name(0);
  out << "\nSubject To\n";
  for (const LinearRow& r : rows_) {
    out << ' ' << r.name << ':';
    for (const auto& [var, coef] : r.terms) {
      out << (coef < 0 ? " - " : " + ") << std::abs(coef) << ' ' << variable_name(var);
    }
    const char* sense = r.sense == LinearRow::Sense::kEq   ? " = "
                        : r.sense == LinearRow::Sense::kLe ? " <= "
                                                           : " >= ";
    out << sense << r.rhs << '\n';
  }
  out << "Binary\n";
  for (int var = 0; var < num_variables(); ++var) out << ' ' << variable_name(var) << '\n';
  out << "End\n";
  return out.str();
}

Mapping solve_exact(const WeightedGraph& topology, const WeightedGraph& demand) {
  const Objective f(topology, demand);
  const int n = f.n();
  if (n > kExactMappingLimit) {
    throw TooLargeError("exact mapping is limited to " +
                        std::to_string(kExactMappingLimit) + " nodes, got " +
                        std::to_string(n));
  }
  std::vector<int> sigma(n, -1);
  std::vector<bool> used(n, false);
  std::vector<int> best;
  double best_obj = std::numeric_limits<double>::infinity();
  auto margin = [&] { return 1e-12 * std::max(1.0, std::abs(best_obj)); };

  // Weights are non-negative, so the partial sum bounds every completion. The
  // running sum rounds differently from the leaf evaluation, hence the slack.
  auto dfs = [&](auto&& self, int v, double partial) -> void {
    if (v == n) {
      const double obj = f(std::span<const int>(sigma));
      if (best.empty() || obj < best_obj) {
        best_obj = obj;
        best = sigma;
      }
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (used[u]) continue;
      double add = 0.0;
      for (int p = 0; p < v; ++p) add += f.l(p, v) * f.w(sigma[p], u);
      if (!best.empty() && partial + add > best_obj + margin()) continue;
      sigma[v] = u;
      used[u] = true;
      self(self, v + 1, partial + add);
      used[u] = false;
      sigma[v] = -1;
    }
  };
  dfs(dfs, 0, 0.0);
  return make_mapping(f, std::move(best), "exact");
}

std::vector<int> random_assignment(int num_nodes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> sigma(num_nodes);
  std::iota(sigma.begin(), sigma.end(), 0);
  rng.shuffle(std::span<int>(sigma));
  return sigma;
}

Mapping solve_annealing(const WeightedGraph& topology, const WeightedGraph& demand,
                        std::uint64_t seed, int iterations) {
  const Objective f(topology, demand);
  const int n = f.n();
  Rng rng(seed);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  rng.shuffle(std::span<int>(sigma));
  if (iterations <= 0 || n < 2) return make_mapping(f, std::move(sigma), "annealing");

  // Starting temperature from the mean size of a few random exchanges.
  double scale = 0.0;
  const int probes = std::min(iterations, 8 * n);
  for (int t = 0; t < probes; ++t) {
    const int a = static_cast<int>(rng.below(n));
    const int b = static_cast<int>(rng.below(n - 1));
    scale += std::abs(f.swap_delta(sigma, a, b >= a ? b + 1 : b));
  }
  const double t0 = std::max(scale / probes, 1e-12);
  const double t1 = t0 * 1e-3;
  const double cool = std::pow(t1 / t0, 1.0 / iterations);

  double current = f(std::span<const int>(sigma));
  std::vector<int> best = sigma;
  double best_obj = current;
  double temp = t0;
  for (int it = 0; it < iterations; ++it, temp *= cool) {
    const int a = static_cast<int>(rng.below(n));
    int b = static_cast<int>(rng.below(n - 1));
    if (b >= a) ++b;
    const double d = f.swap_delta(sigma, a, b);
    if (d <= 0.0 || rng.uniform() < std::exp(-d / temp)) {
      std::swap(sigma[a], sigma[b]);
      current += d;
      if (current < best_obj) {
        // Re-evaluate so drift in the running sum never decides the answer.
        current = f(std::span<const int>(sigma));
        if (current < best_obj) {
          best_obj = current;
          best = sigma;
        }
      }
    }
  }
  return make_mapping(f, std::move(best), "annealing");
}

BaselineStats random_baseline(const WeightedGraph& topology, const WeightedGraph& demand,
                              std::uint64_t seed, int trials) {
  if (trials < 1) throw DomainError("random baseline needs at least one trial");
  const Objective f(topology, demand);
  Rng rng(seed);
  BaselineStats s;
  std::vector<int> sigma(f.n());
  for (int t = 0; t < trials; ++t) {
    std::iota(sigma.begin(), sigma.end(), 0);
    rng.shuffle(std::span<int>(sigma));
    s.samples.push_back(f(std::span<const int>(sigma)));
  }
  s.mean = std::accumulate(s.samples.begin(), s.samples.end(), 0.0) / trials;
  s.min = *std::min_element(s.samples.begin(), s.samples.end());
  s.max = *std::max_element(s.samples.begin(), s.samples.end());
  return s;
}

WeightedGraph gen_topology(int nodes, double beta, std::uint64_t seed) {
  if (nodes < 2 || !(beta > 0.0)) throw DomainError("gen_topology needs nodes >= 2, beta > 0");
  Rng rng(seed);
  WeightedGraph g(nodes);
  for (int u = 0; u < nodes; ++u) {
    for (int v = u + 1; v < nodes; ++v) g.add_weight(u, v, rng.beta(beta, beta));
  }
  return g;
}

WeightedGraph gen_demand(int nodes, double beta, std::uint64_t seed, int l_max) {
  if (nodes < 2 || !(beta > 0.0) || l_max < 1) {
    throw DomainError("gen_demand needs nodes >= 2, beta > 0, l_max >= 1");
  }
  Rng rng(seed);
  WeightedGraph g(nodes);
  for (int u = 0; u < nodes; ++u) {
    for (int v = u + 1; v < nodes; ++v) {
      g.add_weight(u, v, std::round(l_max * rng.beta(beta, beta)));
    }
  }
  return g;
}

double improvement_pct(const WeightedGraph& topology, const WeightedGraph& demand,
                       std::uint64_t seed, int trials) {
  const BaselineStats base = random_baseline(topology, demand, seed, trials);
  if (base.mean == 0.0) return 0.0;
  const Mapping best = solve_exact(topology, demand);
  return 100.0 * (base.mean - best.objective) / base.mean;
}

std::vector<SkewRow> skew_experiment(const std::vector<double>& beta_topology,
                                     const std::vector<double>& beta_demand,
                                     const std::vector<std::uint64_t>& seeds,
                                     const SkewConfig& config) {
  std::vector<SkewRow> rows;
  for (double bt : beta_topology) {
    for (double bd : beta_demand) {
      for (std::uint64_t seed : seeds) {
        const WeightedGraph g = gen_topology(config.nodes, bt, mix_seed(seed, 1));
        const WeightedGraph d = gen_demand(config.nodes, bd, mix_seed(seed, 2), config.l_max);
        const BaselineStats base = random_baseline(g, d, mix_seed(seed, 3), config.trials);
        const Mapping best = solve_exact(g, d);
        SkewRow row{bt, bd, seed, 0.0, true};
        if (base.mean != 0.0) row.improvement_pct = 100.0 * (base.mean - best.objective) / base.mean;
        row.optimum_below_samples = best.objective <= base.min;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace qdist
