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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "qdist/error.hpp"
#include "qdist/netmap.hpp"
#include "qdist/rng.hpp"

using namespace qdist;

namespace {

WeightedGraph triangle_topology() {
  WeightedGraph g(3);  // A, B, C
  g.add_weight(0, 1, 1);
  g.add_weight(1, 2, 10);
  g.add_weight(0, 2, 10);
  return g;
}

WeightedGraph triangle_demand() {
  WeightedGraph g(3);  // p, q, r
  g.add_weight(0, 1, 5);
  g.add_weight(1, 2, 1);
  g.add_weight(0, 2, 1);
  return g;
}

// Objective written directly from the definition, pair by pair.
double direct_objective(const WeightedGraph& top, const WeightedGraph& dem,
                        const std::vector<int>& sigma) {
  double total = 0.0;
  for (int a = 0; a < dem.num_nodes(); ++a) {
    for (int b = a + 1; b < dem.num_nodes(); ++b) total += dem.weight(a, b) * top.weight(sigma[a], sigma[b]);
  }
  return total;
}

struct Enumerated {
  double best = 0.0;
  std::vector<int> argmin;
  std::vector<double> values;
};

Enumerated enumerate_bijections(const WeightedGraph& top, const WeightedGraph& dem) {
  std::vector<int> sigma(top.num_nodes());
  std::iota(sigma.begin(), sigma.end(), 0);
  Enumerated e;
  do {
    const double v = mapping_objective(top, dem, sigma);
    e.values.push_back(v);
    if (e.argmin.empty() || v < e.best) {
      e.best = v;
      e.argmin = sigma;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return e;
}

WeightedGraph random_weights(int n, std::uint64_t seed, bool integral) {
  Rng rng(seed);
  WeightedGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      g.add_weight(a, b, integral ? static_cast<double>(rng.below(6)) : rng.uniform());
    }
  }
  return g;
}

}  // namespace

TEST_CASE("model sizes") {
  const IlpModel three(triangle_topology(), triangle_demand());
  CHECK(three.num_nodes() == 3);
  CHECK(three.num_edges() == 3);
  CHECK(three.num_variables() == 9 + 9 + 9 + 9);
  const IlpModel two(WeightedGraph(2), WeightedGraph(2));
  CHECK(two.num_variables() == 4 + 1 + 1 + 1);
  // Demand padded up to the topology size.
  const IlpModel padded(triangle_topology(), WeightedGraph(2));
  CHECK(padded.num_nodes() == 3);
  CHECK_THROWS_AS(IlpModel(WeightedGraph(2), triangle_demand()), DomainError);

  for (const LinearRow& r : three.rows()) {
    for (const auto& [var, coef] : r.terms) {
      CHECK(var >= 0);
      CHECK(var < three.num_variables());
    }
  }
  CHECK(three.variable_name(three.y(2, 1)) == "y_2_1");
  CHECK(three.variable_name(three.x(1, 2)) == "x_1_2");
  CHECK(three.variable_name(three.z1(0, 1)) == "z1_0_1");
  CHECK(three.variable_name(three.z2(2, 2)) == "z2_2_2");
}

TEST_CASE("every bijection is a feasible point with the same objective") {
  for (int n = 2; n <= 5; ++n) {
    const WeightedGraph top = random_weights(n, 10 + n, false);
    const WeightedGraph dem = random_weights(n, 20 + n, true);
    const IlpModel model(top, dem);
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      const std::vector<double> p = model.point_for(sigma);
      CHECK(model.satisfies(p));
      CHECK(model.evaluate(p) == doctest::Approx(mapping_objective(top, dem, sigma)));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
}

TEST_CASE("linearized model optimum equals the permutation optimum") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const WeightedGraph top = random_weights(n, seed, false);
    const WeightedGraph dem = random_weights(n, seed + 100, true);
    const IlpModel model(top, dem);
    const int e = model.num_edges();
    double best = std::numeric_limits<double>::infinity();
    int feasible = 0;
    std::vector<int> row_choice(n, 0);
    for (;;) {
      std::vector<double> p(model.num_variables(), 0.0);
      for (int u = 0; u < n; ++u) p[model.y(u, row_choice[u])] = 1.0;
      bool ok = true;
      for (int i = 0; i < e && ok; ++i) {
        const auto [u1, u2] = model.edges()[i];
        for (int j = 0; j < e && ok; ++j) {
          const auto [v1, v2] = model.edges()[j];
          const double a = p[model.y(u1, v1)] * p[model.y(u2, v2)];
          const double b = p[model.y(u1, v2)] * p[model.y(u2, v1)];
          p[model.z1(i, j)] = a;
          p[model.z2(i, j)] = b;
          p[model.x(i, j)] = a + b;
          ok = a + b <= 1.0;
        }
      }
      if (ok && model.satisfies(p)) {
        ++feasible;
        best = std::min(best, model.evaluate(p));
      }
      int u = n - 1;
      while (u >= 0 && ++row_choice[u] == n) row_choice[u--] = 0;
      if (u < 0) break;
    }
    const Enumerated perm = enumerate_bijections(top, dem);
    CHECK(feasible == static_cast<int>(perm.values.size()));
    CHECK(best == doctest::Approx(perm.best));
  }
}

TEST_CASE("identity point satisfies and broken points do not") {
  const IlpModel m(triangle_topology(), triangle_demand());
  const std::vector<int> id = {0, 1, 2};
  std::vector<double> p = m.point_for(id);
  CHECK(m.satisfies(p));
  std::vector<double> bad = p;
  bad[m.z1(0, 0)] = 1.0 - bad[m.z1(0, 0)];
  CHECK_FALSE(m.satisfies(bad));
  bad = p;
  bad[m.y(0, 0)] = 0.5;
  CHECK_FALSE(m.satisfies(bad));
  CHECK_FALSE(m.satisfies(std::vector<double>(3, 0.0)));
  const std::string lp = m.to_lp();
  CHECK(lp.starts_with("Minimize"));
  CHECK(lp.find("Subject To") != std::string::npos);
  CHECK(lp.find("Binary") != std::string::npos);
  CHECK(lp.find("z1c_0_0:") != std::string::npos);
}

TEST_CASE("triangle instance") {
  const WeightedGraph top = triangle_topology();
  const WeightedGraph dem = triangle_demand();
  const Mapping best = solve_exact(top, dem);
  CHECK(best.objective == 25.0);
  CHECK(best.method == "exact");
  CHECK(best.assignment == std::vector<int>{0, 1, 2});
  const Enumerated e = enumerate_bijections(top, dem);
  std::vector<double> values = e.values;
  std::sort(values.begin(), values.end());
  CHECK(values == std::vector<double>{25, 25, 61, 61, 61, 61});
  for (std::size_t i = 0; i < e.values.size(); ++i) CHECK(e.values[i] >= best.objective);

  const BaselineStats stats = random_baseline(top, dem, 3, 1000);
  CHECK(std::abs(stats.mean - 49.0) <= 3.0 * std::sqrt(288.0 / 1000.0));
  CHECK(stats.min == 25.0);
  CHECK(stats.max == 61.0);

  const double pct = improvement_pct(top, dem, 3, 1000);
  CHECK(pct == doctest::Approx(100.0 * (stats.mean - 25.0) / stats.mean));
  CHECK(std::abs(pct - 100.0 * 24.0 / 49.0) < 3.0);
}

TEST_CASE("degenerate instances") {
  WeightedGraph flat(4);
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) flat.add_weight(a, b, 0.5);
  }
  const WeightedGraph dem = random_weights(4, 8, true);
  const Mapping m = solve_exact(flat, dem);
  CHECK(m.assignment == std::vector<int>{0, 1, 2, 3});
  CHECK(m.objective == doctest::Approx(0.5 * dem.total_weight()));
  const BaselineStats s = random_baseline(flat, dem, 1, 50);
  CHECK(s.mean == doctest::Approx(m.objective));
  CHECK(improvement_pct(flat, dem, 1, 50) == doctest::Approx(0.0).epsilon(1e-9));

  WeightedGraph single(4);
  single.add_weight(1, 3, 7);
  const WeightedGraph noise = random_weights(4, 99, false);
  WeightedGraph fixed(4);
  for (int u = 0; u < 4; ++u) {
    for (int v = u + 1; v < 4; ++v) fixed.add_weight(u, v, u == 0 && v == 2 ? 0.2 : 0.3 + noise.weight(u, v));
  }
  CHECK(solve_exact(fixed, single).objective == doctest::Approx(1.4));

  CHECK(improvement_pct(triangle_topology(), WeightedGraph(3), 0, 10) == 0.0);
  CHECK_THROWS_AS(solve_exact(WeightedGraph(11), WeightedGraph(3)), TooLargeError);
  CHECK_THROWS_AS(random_baseline(flat, dem, 0, 0), DomainError);
  CHECK_THROWS_AS(mapping_objective(flat, dem, std::vector<int>{0, 0, 1, 2}), DomainError);
}

TEST_CASE("exact solver matches enumeration, ties included") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 6);
    const WeightedGraph top = random_weights(n, seed * 3 + 1, seed % 2 == 0);
    const WeightedGraph dem = random_weights(n - static_cast<int>(seed % 2), seed * 3 + 2, true);
    const Enumerated e = enumerate_bijections(top, dem);
    const Mapping m = solve_exact(top, dem);
    CHECK(m.objective == e.best);
    CHECK(m.assignment == e.argmin);
    CHECK(m.objective == doctest::Approx(direct_objective(top, dem, m.assignment)));
    const BaselineStats s = random_baseline(top, dem, seed, 30);
    for (double v : s.samples) CHECK(m.objective <= v);
  }
}

TEST_CASE("objective is invariant under relabeling the topology") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 5;
    const WeightedGraph top = random_weights(n, 500 + trial, false);
    const WeightedGraph dem = random_weights(n, 600 + trial, true);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(std::span<int>(perm));
    WeightedGraph renamed(n);
    for (const Edge& e : top.edges()) renamed.add_weight(perm[e.u], perm[e.v], e.weight);
    const Mapping m = solve_exact(top, dem);
    std::vector<int> moved(n);
    for (int v = 0; v < n; ++v) moved[v] = perm[m.assignment[v]];
    CHECK(mapping_objective(renamed, dem, moved) == doctest::Approx(m.objective));
    CHECK(solve_exact(renamed, dem).objective == doctest::Approx(m.objective));
  }
}

TEST_CASE("annealing") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const int n = 4 + static_cast<int>(seed % 6);
    const WeightedGraph top = random_weights(n, seed + 40, false);
    const WeightedGraph dem = random_weights(n, seed + 80, true);
    const Mapping exact = solve_exact(top, dem);
    const Mapping heur = solve_annealing(top, dem, seed, 5000);
    CHECK(heur.method == "annealing");
    CHECK(heur.objective >= exact.objective);
    CHECK(heur.objective <= random_baseline(top, dem, seed, 100).mean);
    CHECK(heur.objective == doctest::Approx(direct_objective(top, dem, heur.assignment)));
    const Mapping again = solve_annealing(top, dem, seed, 5000);
    CHECK(again.assignment == heur.assignment);
    const Mapping idle = solve_annealing(top, dem, seed, 0);
    CHECK(idle.assignment == random_assignment(n, seed));
  }
  const WeightedGraph big_top = random_weights(30, 1, false);
  const WeightedGraph big_dem = random_weights(30, 2, true);
  const Mapping big = solve_annealing(big_top, big_dem, 5, 20000);
  CHECK(big.objective < random_baseline(big_top, big_dem, 5, 200).mean);
}

TEST_CASE("random baseline") {
  const WeightedGraph top = random_weights(6, 1, false);
  const WeightedGraph dem = random_weights(6, 2, true);
  const BaselineStats one = random_baseline(top, dem, 42, 1);
  CHECK(one.samples.size() == 1);
  CHECK(one.mean == mapping_objective(top, dem, random_assignment(6, 42)));
  CHECK(random_baseline(top, dem, 42, 20).samples == random_baseline(top, dem, 42, 20).samples);
}

TEST_CASE("beta generators") {
  const WeightedGraph concentrated = gen_topology(142, 50.0, 3);
  REQUIRE(concentrated.num_edges() == 10011);
  const double mean = concentrated.total_weight() / 10011.0;
  CHECK(mean >= 0.4);
  CHECK(mean <= 0.6);

  const WeightedGraph skewed = gen_topology(142, 0.2, 3);
  int outside = 0;
  for (int a = 0; a < 142; ++a) {
    for (int b = a + 1; b < 142; ++b) {
      const double w = skewed.weight(a, b);
      outside += w < 0.25 || w > 0.75;
    }
  }
  CHECK(outside >= 6007);

  CHECK(gen_topology(6, 1.0, 9) == gen_topology(6, 1.0, 9));
  CHECK(gen_demand(6, 1.0, 9, 100) == gen_demand(6, 1.0, 9, 100));
  const WeightedGraph d = gen_demand(20, 0.5, 1, 50);
  for (const Edge& e : d.edges()) {
    CHECK(e.weight == std::round(e.weight));
    CHECK(e.weight <= 50.0);
  }
  CHECK_THROWS_AS(gen_topology(1, 1.0, 0), DomainError);
  CHECK_THROWS_AS(gen_topology(4, 0.0, 0), DomainError);
  CHECK_THROWS_AS(gen_demand(4, 1.0, 0, 0), DomainError);
}

TEST_CASE("skewed weights leave more room for optimization") {
  std::vector<std::uint64_t> seeds(100);
  std::iota(seeds.begin(), seeds.end(), 0);
  const auto skewed = skew_experiment({0.2}, {0.2}, seeds);
  const auto flat = skew_experiment({5.0}, {5.0}, seeds);
  double a = 0.0;
  double b = 0.0;
  for (const SkewRow& r : skewed) {
    a += r.improvement_pct;
    CHECK(r.optimum_below_samples);
  }
  for (const SkewRow& r : flat) {
    b += r.improvement_pct;
    CHECK(r.optimum_below_samples);
  }
  MESSAGE("mean improvement: beta 0.2 -> " << a / 100 << "%, beta 5 -> " << b / 100 << "%");
  CHECK(a > b);
}
