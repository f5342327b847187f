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

#include "qdist/kl.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>

#include "qdist/error.hpp"
#include "qdist/kernels.hpp"
#include "qdist/rng.hpp"

namespace qdist {

namespace {

constexpr double kEps = 1e-9;

// Dense symmetric matrix over a node subset, indexed locally.
struct LocalGraph {
  std::size_t size = 0;
  std::vector<double> a;
  std::vector<double> row_total;

  double at(std::size_t i, std::size_t j) const { return a[i * size + j]; }
  std::span<const double> row(std::size_t i) const {
    return {a.data() + i * size, size};
  }
};

LocalGraph restrict_to(const std::vector<double>& adj, std::size_t n,
                       const std::vector<int>& nodes) {
  LocalGraph g;
  g.size = nodes.size();
  g.a.resize(g.size * g.size);
  g.row_total.resize(g.size);
  for (std::size_t i = 0; i < g.size; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < g.size; ++j) {
      const double w = adj[nodes[i] * n + nodes[j]];
      g.a[i * g.size + j] = w;
      total += w;
    }
    g.row_total[i] = total;
  }
  return g;
}

// Kernighan-Lin refinement of a two-way labeling.
//
// Gains: D(v) = external - internal weight; a swap (a, b) gains
// D(a) + D(b) - 2 w(a, b) and a single move gains D(v). Single moves are
// offered whenever the receiving side has spare capacity. Nodes without edges
// never change the cut, so they only serve as swap partners (lowest index
// first). Equal gains resolve to the lexicographically smallest node pair.
class Bisection {
 public:
  Bisection(const LocalGraph& g, std::vector<std::int32_t>& side, int cap0,
            int cap1)
      : g_(g), side_(side), cap_{cap0, cap1} {
    for (auto s : side_) ++count_[s];
  }

  void run(int max_passes) {
    for (int pass = 0; pass < max_passes; ++pass) {
      if (!improve_once()) break;
    }
  }

 private:
  struct Op {
    int a;
    int b;  // -1 for a single move
  };

  void move(int v) {
    const int from = side_[v];
    const int to = 1 - from;
    const auto row = g_.row(v);
    for (std::size_t u = 0; u < g_.size; ++u) {
      if (static_cast<int>(u) == v || row[u] == 0.0) continue;
      d_[u] += side_[u] == from ? 2.0 * row[u] : -2.0 * row[u];
    }
    d_[v] = -d_[v];
    side_[v] = to;
    --count_[from];
    ++count_[to];
  }

  bool improve_once() {
    const std::size_t n = g_.size;
    d_.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      d_[v] = g_.row_total[v] -
              2.0 * kernels::masked_row_sum(g_.row(v), side_, side_[v]);
    }
    std::vector<char> locked(n, 0);
    std::vector<Op> ops;
    double cum = 0.0;
    double best_cum = 0.0;
    std::size_t best_len = 0;
    std::vector<int> list[2];

    for (;;) {
      list[0].clear();
      list[1].clear();
      int iso[2] = {-1, -1};
      for (std::size_t v = 0; v < n; ++v) {
        if (locked[v]) continue;
        const int s = side_[v];
        if (g_.row_total[v] > 0.0) {
          list[s].push_back(static_cast<int>(v));
        } else if (iso[s] < 0) {
          iso[s] = static_cast<int>(v);
        }
      }
      for (auto& l : list) {
        std::stable_sort(l.begin(), l.end(),
                         [&](int x, int y) { return d_[x] > d_[y]; });
      }

      double best = -std::numeric_limits<double>::infinity();
      std::pair<int, int> best_key{INT_MAX, INT_MAX};
      Op best_op{-1, -1};
      auto consider = [&](double gain, int a, int b) {
        const std::pair<int, int> key =
            b < 0 ? std::pair{a, a} : std::pair{std::min(a, b), std::max(a, b)};
        if (gain > best + kEps || (gain >= best - kEps && key < best_key)) {
          best = gain;
          best_key = key;
          best_op = {a, b};
        }
      };

      for (int s = 0; s < 2; ++s) {
        if (count_[1 - s] < cap_[1 - s]) {
          for (int v : list[s]) consider(d_[v], v, -1);
        }
        if (iso[1 - s] >= 0) {
          for (int v : list[s]) consider(d_[v], v, iso[1 - s]);
        }
      }
      for (int a : list[0]) {
        if (list[1].empty() || d_[a] + d_[list[1].front()] < best - kEps) break;
        for (int b : list[1]) {
          const double bound = d_[a] + d_[b];
          if (bound < best - kEps) break;
          consider(bound - 2.0 * g_.at(a, b), a, b);
        }
      }
      if (best_op.a < 0) break;

      move(best_op.a);
      locked[best_op.a] = 1;
      if (best_op.b >= 0) {
        move(best_op.b);
        locked[best_op.b] = 1;
      }
      ops.push_back(best_op);
      cum += best;
      if (cum > best_cum + kEps) {
        best_cum = cum;
        best_len = ops.size();
      }
    }

    // Roll back past the best prefix; D is rebuilt at the next pass.
    for (std::size_t i = ops.size(); i > best_len; --i) {
      const Op& op = ops[i - 1];
      flip(op.a);
      if (op.b >= 0) flip(op.b);
    }
    return best_len > 0;
  }

  void flip(int v) {
    --count_[side_[v]];
    side_[v] = 1 - side_[v];
    ++count_[side_[v]];
  }

  const LocalGraph& g_;
  std::vector<std::int32_t>& side_;
  int cap_[2];
  int count_[2] = {0, 0};
  std::vector<double> d_;
};

// Split point of the QPU range [lo, hi): totals as equal as possible, the
// first group taking the larger share on ties.
int split_point(const std::vector<int>& caps, int lo, int hi) {
  const long long total = std::accumulate(caps.begin() + lo, caps.begin() + hi, 0LL);
  long long prefix = 0;
  int best_mid = lo + 1;
  long long best_diff = LLONG_MAX;
  for (int mid = lo + 1; mid < hi; ++mid) {
    prefix += caps[mid - 1];
    const long long diff = std::llabs(2 * prefix - total);
    if (diff <= best_diff) {
      best_diff = diff;
      best_mid = mid;
    }
  }
  return best_mid;
}

// Places every node of `nodes` on a QPU inside [lo, hi). Nodes already
// inside keep their QPU; the rest fill the lowest QPUs with room.
void settle(std::vector<int>& assignment, const std::vector<int>& caps,
            const std::vector<int>& nodes, int lo, int hi) {
  std::vector<int> load(caps.size(), 0);
  for (int v : nodes) {
    if (assignment[v] >= lo && assignment[v] < hi) ++load[assignment[v]];
  }
  int p = lo;
  for (int v : nodes) {
    if (assignment[v] >= lo && assignment[v] < hi) continue;
    while (load[p] >= caps[p]) ++p;
    assignment[v] = p;
    ++load[p];
  }
}

void bisect_range(const std::vector<double>& adj, std::size_t n,
                  std::vector<int>& assignment, const std::vector<int>& caps,
                  const std::vector<int>& nodes, int lo, int hi,
                  int max_passes) {
  if (hi - lo <= 1 || nodes.empty()) return;
  const int mid = split_point(caps, lo, hi);
  const int cap0 = std::accumulate(caps.begin() + lo, caps.begin() + mid, 0);
  const int cap1 = std::accumulate(caps.begin() + mid, caps.begin() + hi, 0);

  std::vector<std::int32_t> side(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    side[i] = assignment[nodes[i]] >= mid ? 1 : 0;
  }
  const LocalGraph local = restrict_to(adj, n, nodes);
  Bisection(local, side, cap0, cap1).run(max_passes);

  std::vector<int> group[2];
  for (std::size_t i = 0; i < nodes.size(); ++i) group[side[i]].push_back(nodes[i]);
  settle(assignment, caps, group[0], lo, mid);
  settle(assignment, caps, group[1], mid, hi);
  bisect_range(adj, n, assignment, caps, group[0], lo, mid, max_passes);
  bisect_range(adj, n, assignment, caps, group[1], mid, hi, max_passes);
}

Partition random_fill(int num_nodes, const std::vector<int>& caps,
                      std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(num_nodes));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<int>(order));
  const Partition seq = Partition::sequential(num_nodes, caps);
  std::vector<int> assignment(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    assignment[order[i]] = seq.part_of(static_cast<int>(i));
  }
  return Partition(std::move(assignment), caps);
}

}  // namespace

Partition kl_refine(const WeightedGraph& graph, const Partition& start,
                    int max_passes) {
  if (start.num_nodes() != graph.num_nodes()) {
    throw DomainError("initial partition does not cover every graph node");
  }
  const auto n = static_cast<std::size_t>(graph.num_nodes());
  const std::vector<double> adj = graph.adjacency();
  std::vector<int> assignment(start.assignment().begin(), start.assignment().end());
  const std::vector<int> caps(start.capacities().begin(), start.capacities().end());
  std::vector<int> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  bisect_range(adj, n, assignment, caps, nodes, 0, static_cast<int>(caps.size()),
               max_passes);
  return Partition(std::move(assignment), caps);
}

Partition kl_kway(const WeightedGraph& graph, const std::vector<int>& capacities,
                  const std::optional<Partition>& initial,
                  const KlOptions& options) {
  check_capacities(capacities, graph.num_nodes());
  if (initial) {
    if (initial->num_nodes() != graph.num_nodes()) {
      throw DomainError("initial partition does not cover every graph node");
    }
    if (!std::equal(capacities.begin(), capacities.end(),
                    initial->capacities().begin(), initial->capacities().end())) {
      throw DomainError("initial partition uses different capacities");
    }
  }
  const int restarts = std::max(1, options.restarts);
  std::optional<Partition> best;
  double best_cut = 0.0;
  for (int r = 0; r < restarts; ++r) {
    const Partition start =
        r == 0 ? initial.value_or(Partition::sequential(graph.num_nodes(), capacities))
               : random_fill(graph.num_nodes(), capacities,
                             mix_seed(options.seed, static_cast<std::uint64_t>(r)));
    Partition result = kl_refine(graph, start, options.max_passes);
    const double cut = cut_weight(graph, result);
    if (!best || cut < best_cut - kEps ||
        (cut <= best_cut + kEps &&
         std::lexicographical_compare(result.assignment().begin(),
                                      result.assignment().end(),
                                      best->assignment().begin(),
                                      best->assignment().end()))) {
      best = std::move(result);
      best_cut = cut;
    }
  }
  return *best;
}

Partition kl_bipartition(const WeightedGraph& graph, int size0, int size1,
                         const std::optional<Partition>& initial,
                         const KlOptions& options) {
  if (size0 < 1 || size1 < 1) throw DomainError("bipartition sizes must be positive");
  if (initial && initial->num_parts() != 2) {
    throw DomainError("initial partition must have two parts");
  }
  return kl_kway(graph, {size0, size1}, initial, options);
}

double count_assignments(int num_nodes, const std::vector<int>& capacities) {
  constexpr double kCap = 1e300;
  // ways[t]: labelings of t distinguishable nodes using the QPUs seen so far.
  std::vector<double> ways(static_cast<std::size_t>(num_nodes) + 1, 0.0);
  ways[0] = 1.0;
  for (int cap : capacities) {
    std::vector<double> next(ways.size(), 0.0);
    for (int t = 0; t <= num_nodes; ++t) {
      double binom = 1.0;  // C(t, s)
      for (int s = 0; s <= std::min(cap, t); ++s) {
        if (s > 0) binom = binom * (t - s + 1) / s;
        next[t] = std::min(kCap, next[t] + ways[t - s] * binom);
      }
    }
    ways = std::move(next);
  }
  return ways[num_nodes];
}

ExhaustiveResult exhaustive_kway(const WeightedGraph& graph,
                                 const std::vector<int>& capacities) {
  const int n = graph.num_nodes();
  check_capacities(capacities, n);
  if (count_assignments(n, capacities) > kExhaustiveLimit) {
    throw TooLargeError("exhaustive partitioning limited to 1e7 labelings");
  }
  const std::vector<double> adj = graph.adjacency();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> prefix_total(un, 0.0);
  for (std::size_t v = 0; v < un; ++v) {
    for (std::size_t u = 0; u < v; ++u) prefix_total[v] += adj[v * un + u];
  }
  const int m = static_cast<int>(capacities.size());
  std::vector<std::int32_t> labels(un, -1);
  std::vector<int> load(capacities.size(), 0);
  std::vector<int> best_labels;
  double best = std::numeric_limits<double>::infinity();

  // Depth-first in lexicographic label order, so the first optimum found is
  // the lexicographically smallest one. Weights are non-negative, so a
  // partial cut that already reaches the incumbent cannot beat it.
  auto dfs = [&](auto&& self, std::size_t v, double partial) -> void {
    if (v == un) {
      if (partial < best - kEps) {
        best = partial;
        best_labels.assign(labels.begin(), labels.end());
      }
      return;
    }
    const std::span<const double> row(adj.data() + v * un, v);
    const std::span<const std::int32_t> prev(labels.data(), v);
    for (int p = 0; p < m; ++p) {
      if (load[p] >= capacities[p]) continue;
      const double inc = prefix_total[v] - kernels::masked_row_sum(row, prev, p);
      if (partial + inc >= best - kEps) continue;
      labels[v] = p;
      ++load[p];
      self(self, v + 1, partial + inc);
      --load[p];
    }
    labels[v] = -1;
  };
  dfs(dfs, 0, 0.0);
  return {Partition(std::move(best_labels), capacities), best};
}

}  // namespace qdist
