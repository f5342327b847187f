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
#include <set>
#include <utility>

#include "doctest.h"
#include "qdist/circuit.hpp"
#include "qdist/error.hpp"
#include "qdist/qftplan.hpp"

using namespace qdist;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& prefix) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.starts_with(prefix); });
}

std::multiset<std::pair<int, int>> cr_pairs(const QftPlan& plan) {
  std::multiset<std::pair<int, int>> out;
  for (const QftEvent& e : plan.events) {
    if (e.op == QftOp::kCr) out.insert({e.control, e.qubit});
  }
  return out;
}

std::multiset<std::pair<int, int>> cr_pairs(const Circuit& c) {
  std::multiset<std::pair<int, int>> out;
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::kCr) out.insert({g.qubits[0], g.qubits[1]});
  }
  return out;
}

// Largest number of qubits resident on any QPU during the plan, counted from
// the teleports alone.
int peak_residency(const QftPlan& plan) {
  std::vector<int> where(plan.n);
  std::vector<int> load(plan.m, 0);
  for (int q = 0; q < plan.n; ++q) ++load[where[q] = q / plan.k];
  int peak = *std::max_element(load.begin(), load.end());
  for (const QftEvent& e : plan.events) {
    if (e.op != QftOp::kTeleport) continue;
    --load[where[e.qubit]];
    peak = std::max(peak, ++load[where[e.qubit] = e.to]);
  }
  return peak;
}

int count_op(const QftPlan& plan, QftOp op) {
  return static_cast<int>(std::count_if(plan.events.begin(), plan.events.end(),
                                        [op](const QftEvent& e) { return e.op == op; }));
}

}  // namespace

TEST_CASE("two-QPU schedule for every even n up to 64") {
  for (int n = 2; n <= 64; n += 2) {
    const QftPlan plan = plan_qft_two(n);
    CHECK(plan.epr_used == n);
    CHECK(plan.epr_used == epr_two(n));
    CHECK(count_op(plan, QftOp::kTeleport) == n);
    CHECK(count_op(plan, QftOp::kSwap) == 0);
    CHECK(plan.capacity == n / 2 + 1);
    CHECK(peak_residency(plan) <= n / 2 + 1);
    CHECK(cr_pairs(plan) == cr_pairs(gen_qft(n)));
    const auto violations = validate_qft_plan(n, plan);
    CHECK(violations.empty());
    for (int q = 0; q < n; ++q) {
      const QftSlot s = plan.final_layout[q];
      CHECK(s.qpu * plan.k + s.slot == n - 1 - q);
    }
  }
}

TEST_CASE("two-QPU schedule on two qubits") {
  const QftPlan plan = plan_qft_two(2);
  CHECK(plan.epr_used == 2);
  REQUIRE(plan.events.size() == 5);
  CHECK(plan.events[0].op == QftOp::kH);
  CHECK(plan.events[1].op == QftOp::kTeleport);
  CHECK(plan.events[2].op == QftOp::kCr);
  CHECK(plan.events[2].control == 1);
  CHECK(plan.events[2].qubit == 0);
  CHECK(plan.events[3].op == QftOp::kTeleport);
  CHECK(plan.events[4].op == QftOp::kH);
  CHECK_THROWS_AS(plan_qft_two(7), DomainError);
  CHECK_THROWS_AS(plan_qft_two(0), DomainError);
}

TEST_CASE("multi-QPU schedule costs n*m/2") {
  for (int m : {2, 4, 6, 8}) {
    for (int k = 1; k <= 8; ++k) {
      const int n = k * m;
      CAPTURE(n);
      CAPTURE(m);
      const QftPlan plan = plan_qft_multi(n, m);
      CHECK(plan.epr_used == n * m / 2);
      CHECK(plan.epr_used == epr_multi(n, m));
      CHECK(plan.epr_used <= k * m * m / 2);
      CHECK(epr_multi(n, m) < epr_neumann(n, m));
      CHECK(peak_residency(plan) <= k + 1);
      CHECK(count_op(plan, QftOp::kSwap) == 0);
      CHECK(cr_pairs(plan) == cr_pairs(gen_qft(n)));
      CHECK(validate_qft_plan(n, plan).empty());
      for (int i = 1; i <= m / 2; ++i) {
        CHECK(epr_in_step(plan, 1, i) <= k * (m + 1 - i));
        CHECK(epr_in_step(plan, 2, i) <= k * (i - 1));
      }
    }
  }
}

TEST_CASE("multi-QPU examples and domain") {
  CHECK(plan_qft_multi(16, 4).epr_used == 32);
  CHECK(plan_qft_multi(8, 2).epr_used == plan_qft_two(8).epr_used);
  CHECK_THROWS_AS(plan_qft_multi(9, 3), DomainError);
  CHECK_THROWS_AS(plan_qft_multi(10, 4), DomainError);
  CHECK_THROWS_AS(plan_qft_multi(2, 4), DomainError);
}

TEST_CASE("teleport-only second loop is valid but dearer") {
  for (int m : {2, 4, 6}) {
    for (int k = 1; k <= 4; ++k) {
      const int n = k * m;
      const QftPlan plan = plan_qft_multi(n, m, QftPhase2::kTeleport);
      CHECK(validate_qft_plan(n, plan).empty());
      CHECK(count_op(plan, QftOp::kCatEntangle) == 0);
      int extra = 0;
      for (int i = 2; i <= m / 2; ++i) extra += k * i;
      CHECK(plan.epr_used == n * m / 2 - k * (m / 2) * (m / 2 - 1) / 2 + extra);
      if (m >= 4) CHECK(plan.epr_used > epr_multi(n, m));
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(epr_multi(16, 4) == 32);
  CHECK(epr_neumann(16, 4) == 40);
  CHECK(epr_two(8) == 8);
  CHECK(epr_two(8) == epr_multi(8, 2));
  for (int m = 2; m <= 12; m += 2) {
    for (int k = 1; k <= 10; ++k) CHECK(epr_neumann(k * m, m) - epr_multi(k * m, m) == k * m / 2);
  }
  CHECK_THROWS_AS(epr_two(3), DomainError);
  CHECK_THROWS_AS(epr_multi(9, 3), DomainError);
  CHECK_THROWS_AS(epr_neumann(10, 4), DomainError);
}

TEST_CASE("validator catches broken schedules") {
  const QftPlan good = plan_qft_two(8);
  REQUIRE(validate_qft_plan(8, good).empty());

  QftPlan missing = good;
  missing.events.erase(std::find_if(missing.events.begin(), missing.events.end(),
                                    [](const QftEvent& e) {
                                      return e.op == QftOp::kCr && e.control == 7 && e.qubit == 0;
                                    }));
  const auto cov = validate_qft_plan(8, missing);
  CHECK(has_violation(cov, "coverage: CR(7->0)"));

  QftPlan crowded = good;
  crowded.events.insert(crowded.events.begin(),
                        {QftEvent{QftOp::kTeleport, 4, -1, 1, 0}, QftEvent{QftOp::kTeleport, 5, -1, 1, 0}});
  CHECK(has_violation(validate_qft_plan(8, crowded), "capacity:"));

  QftPlan swapped = good;
  swapped.events.push_back({QftOp::kSwap, 0, 7, 0, -1});
  CHECK(has_violation(validate_qft_plan(8, swapped), "swap:"));

  QftPlan remote = good;
  for (QftEvent& e : remote.events) {
    if (e.op == QftOp::kCr) {
      e.from = 1 - e.from;
      break;
    }
  }
  CHECK(has_violation(validate_qft_plan(8, remote), "colocation:"));

  QftPlan count = good;
  count.epr_used = 7;
  CHECK(has_violation(validate_qft_plan(8, count), "epr:"));

  QftPlan layout = good;
  std::swap(layout.final_layout[0], layout.final_layout[1]);
  CHECK(has_violation(validate_qft_plan(8, layout), "layout:"));

  QftPlan early = good;
  std::rotate(early.events.begin(), early.events.begin() + 1, early.events.begin() + 2);
  CHECK(has_violation(validate_qft_plan(8, early), "order:"));

  CHECK(has_violation(validate_qft_plan(10, good), "event:"));
}
