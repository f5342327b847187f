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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qdist/graph.hpp"

namespace qdist {

/// Bijection from demand nodes (logical QPUs of a plan) onto topology nodes
/// (physical QPUs). Both graphs are padded with isolated nodes to the
/// topology's size.
struct Mapping {
  /// assignment[v] is the topology node hosting demand node v.
  std::vector<int> assignment;
  /// Sum over demand pairs of demand weight times topology link weight.
  double objective = 0.0;
  /// "exact", "annealing" or "random".
  std::string method;
};

/// Objective of `assignment` (demand node -> topology node). Demand may have
/// fewer nodes than the topology; missing ones carry no demand.
double mapping_objective(const WeightedGraph& topology, const WeightedGraph& demand,
                         std::span<const int> assignment);

struct LinearRow {
  enum class Sense { kEq, kLe, kGe };
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::kEq;
  double rhs = 0.0;
  std::string name;
};

/// Linearized quadratic-assignment model over complete graphs on N nodes.
///
/// y(u, v) pairs topology node u with demand node v. x(i, j) pairs topology
/// edge i with demand edge j and is split as z1 + z2, where z1 covers the
/// orientation u1->v1, u2->v2 and z2 the crossed one. Edges are the pairs
/// (a, b), a < b, in lexicographic order.
class IlpModel {
 public:
  IlpModel(const WeightedGraph& topology, const WeightedGraph& demand);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int num_variables() const { return n_ * n_ + 3 * num_edges() * num_edges(); }

  int y(int u, int v) const { return u * n_ + v; }
  int x(int i, int j) const { return n_ * n_ + i * num_edges() + j; }
  int z1(int i, int j) const { return x(i, j) + num_edges() * num_edges(); }
  int z2(int i, int j) const { return x(i, j) + 2 * num_edges() * num_edges(); }
  std::string variable_name(int var) const;

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<LinearRow>& rows() const { return rows_; }

  /// True when every entry is 0 or 1 and every row holds.
  bool satisfies(std::span<const double> point) const;
  double evaluate(std::span<const double> point) const;

  /// The binary point that encodes a node bijection.
  std::vector<double> point_for(std::span<const int> assignment) const;

  /// CPLEX LP text, readable by common MILP solvers.
  std::string to_lp() const;

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<double> objective_;
  std::vector<LinearRow> rows_;
};

inline constexpr int kExactMappingLimit = 10;

/// Branch and bound over bijections. Ties go to the lexicographically
/// smallest assignment. Throws TooLargeError above
/// kExactMappingLimit topology nodes.
Mapping solve_exact(const WeightedGraph& topology, const WeightedGraph& demand);

/// Simulated annealing over pairwise exchanges, started from the first
/// bijection random_baseline draws with the same seed. Returns the best
/// bijection visited.
Mapping solve_annealing(const WeightedGraph& topology, const WeightedGraph& demand,
                        std::uint64_t seed, int iterations);

struct BaselineStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<double> samples;
};

/// Objectives of `trials` uniformly random bijections.
BaselineStats random_baseline(const WeightedGraph& topology, const WeightedGraph& demand,
                              std::uint64_t seed, int trials);

/// The bijection drawn by the first random_baseline trial.
std::vector<int> random_assignment(int num_nodes, std::uint64_t seed);

/// Complete graph with Beta(beta, beta) link weights.
WeightedGraph gen_topology(int nodes, double beta, std::uint64_t seed);
/// Complete graph with weights round(l_max * Beta(beta, beta)).
WeightedGraph gen_demand(int nodes, double beta, std::uint64_t seed, int l_max);

/// 100 * (random mean - exact optimum) / random mean; 0 when the mean is 0.
double improvement_pct(const WeightedGraph& topology, const WeightedGraph& demand,
                       std::uint64_t seed, int trials);

struct SkewRow {
  double beta_topology = 0.0;
  double beta_demand = 0.0;
  std::uint64_t seed = 0;
  double improvement_pct = 0.0;
  /// Exact optimum was at most every random sample.
  bool optimum_below_samples = true;
};

struct SkewConfig {
  int nodes = 6;
  int l_max = 100;
  int trials = 200;
};

/// One row per (beta_topology, beta_demand, seed), in that nesting order.
/// Each seed derives independent streams for the two graphs and the
/// random assignments.
std::vector<SkewRow> skew_experiment(const std::vector<double>& beta_topology,
                                     const std::vector<double>& beta_demand,
                                     const std::vector<std::uint64_t>& seeds,
                                     const SkewConfig& config = {});

}  // namespace qdist
