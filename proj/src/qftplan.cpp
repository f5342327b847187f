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

#include "qdist/qftplan.hpp"

#include <algorithm>
#include <set>

#include "qdist/error.hpp"

namespace qdist {

namespace {

// Emits events while tracking where every qubit lives.
class Schedule {
 public:
  Schedule(int n, int m, int k, int capacity) : where_(n), on_(m), h_done_(n, false) {
    plan_.n = n;
    plan_.m = m;
    plan_.k = k;
    plan_.capacity = capacity;
    for (int q = 0; q < n; ++q) {
      where_[q] = q / k;
      on_[q / k].insert(q);
    }
  }

  void tag(int phase, int step) {
    phase_ = phase;
    step_ = step;
  }

  void h(int q) {
    push({QftOp::kH, q, -1, where_[q], -1});
    h_done_[q] = true;
  }

  void cr(int c, int t, int qpu) { push({QftOp::kCr, t, c, qpu, -1}); }

  void teleport(int q, int to) {
    const int from = where_[q];
    push({QftOp::kTeleport, q, -1, from, to});
    on_[from].erase(q);
    on_[to].insert(q);
    where_[q] = to;
    ++plan_.epr_used;
  }

  void cat(int q, int to) {
    push({QftOp::kCatEntangle, q, -1, where_[q], to});
    ++plan_.epr_used;
  }

  void uncat(int q, int to) { push({QftOp::kCatDisentangle, q, -1, where_[q], to}); }

  // CR(c -> t) on qpu for every resident control c > t.
  void fan_in(int t, int qpu) {
    for (int c : on_[qpu]) {
      if (c > t) cr(c, t, qpu);
    }
  }

  // The arriving control c acts on residents that already had their H.
  void fan_out(int c) {
    const int qpu = where_[c];
    for (int t : on_[qpu]) {
      if (t < c && h_done_[t]) cr(c, t, qpu);
    }
  }

  int where(int q) const { return where_[q]; }

  QftPlan finish() {
    const int n = plan_.n;
    plan_.final_layout.resize(n);
    for (int q = 0; q < n; ++q) {
      const int p = where_[q];
      plan_.final_layout[q] = {p, (n - 1 - q) - p * plan_.k};
    }
    return std::move(plan_);
  }

 private:
  void push(QftEvent e) {
    e.phase = phase_;
    e.step = step_;
    plan_.events.push_back(e);
  }

  QftPlan plan_;
  std::vector<int> where_;
  std::vector<std::set<int>> on_;
  std::vector<bool> h_done_;
  int phase_ = 0;
  int step_ = 0;
};

// H and the CRs among qubits [begin, end), which share a QPU.
void local_block(Schedule& s, int begin, int end) {
  for (int t = begin; t < end; ++t) {
    s.h(t);
    for (int c = t + 1; c < end; ++c) s.cr(c, t, s.where(t));
  }
}

}  // namespace

QftPlan plan_qft_two(int n) {
  if (n < 2 || n % 2 != 0) {
    throw DomainError("two-QPU QFT needs an even qubit count >= 2, got " +
                      std::to_string(n));
  }
  const int h = n / 2;
  Schedule s(n, 2, h, h + 1);
  local_block(s, 0, h);
  for (int j = h; j < n; ++j) {
    s.tag(1, j - h + 1);
    s.teleport(j, 0);
    for (int t = 0; t <= n - 1 - j; ++t) s.cr(j, t, 0);
    const int back = n - 1 - j;
    s.teleport(back, 1);
    for (int c = j + 1; c < n; ++c) s.cr(c, back, 1);
  }
  s.tag(0, 0);
  local_block(s, h, n);
  return s.finish();
}

QftPlan plan_qft_multi(int n, int m, QftPhase2 phase2) {
  if (m < 2 || m % 2 != 0) {
    throw DomainError("QFT planning supports only an even QPU count, got m = " +
                      std::to_string(m));
  }
  if (n < m || n % m != 0) {
    throw DomainError("qubit count " + std::to_string(n) +
                      " is not a positive multiple of m = " + std::to_string(m));
  }
  const int k = n / m;
  Schedule s(n, m, k, k + 1);
  // Loop indices are 1-based QPU numbers; QPU i has index i - 1 and starts
  // with block i, the qubits [(i - 1) k, i k).
  auto first = [k](int block) { return (block - 1) * k; };

  for (int i = 1; i <= m / 2; ++i) {
    s.tag(1, i);
    local_block(s, first(i), first(i) + k);
    const int partner = m - i + 1;
    std::vector<int> route;
    for (int r = i - 1; r >= 1; --r) route.push_back(r);
    for (int r = i + 1; r <= partner; ++r) route.push_back(r);
    for (int a = 0; a < k; ++a) {
      const int j = first(i) + a;
      for (int r : route) {
        s.teleport(j, r - 1);
        s.fan_in(j, r - 1);
      }
      const int l = first(partner) + a;
      s.teleport(l, i - 1);
      s.fan_out(l);
    }
  }

  for (int i = m / 2; i >= 1; --i) {
    s.tag(2, i);
    const int home = i - 1;
    const int begin = first(m - i + 1);
    for (int t = begin; t < begin + k; ++t) {
      s.h(t);
      for (int c = t + 1; c < begin + k; ++c) s.cr(c, t, home);
      if (phase2 == QftPhase2::kCat) {
        for (int r = i - 1; r >= 1; --r) {
          s.cat(t, r - 1);
          s.fan_in(t, r - 1);
          s.uncat(t, r - 1);
        }
      } else {
        for (int r = i - 1; r >= 1; --r) {
          s.teleport(t, r - 1);
          s.fan_in(t, r - 1);
        }
        if (s.where(t) != home) s.teleport(t, home);
      }
    }
  }
  return s.finish();
}

int epr_two(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("epr_two needs an even n >= 2");
  return n;
}

int epr_multi(int n, int m) {
  if (m < 2 || m % 2 != 0 || n < m || n % m != 0) {
    throw DomainError("epr_multi needs an even m dividing n");
  }
  return n * m / 2;
}

int epr_neumann(int n, int m) { return epr_multi(n, m) + n / 2; }

std::vector<std::string> validate_qft_plan(int n, const QftPlan& plan) {
  std::vector<std::string> bad;
  if (plan.n != n || plan.m < 1 || plan.k < 1 || plan.m * plan.k < n) {
    bad.push_back("event: plan dimensions do not describe QFT(" + std::to_string(n) + ")");
    return bad;
  }
  const int m = plan.m;
  const int k = plan.k;
  std::vector<int> where(n);
  std::vector<int> load(m, 0);
  for (int q = 0; q < n; ++q) {
    where[q] = q / k;
    ++load[q / k];
  }
  for (int p = 0; p < m; ++p) {
    if (load[p] > plan.capacity) {
      bad.push_back("capacity: QPU " + std::to_string(p) + " starts over capacity");
    }
  }
  std::vector<std::set<int>> shared(n);
  std::vector<bool> h_done(n, false);
  std::vector<std::vector<bool>> cr_done(n, std::vector<bool>(n, false));
  std::vector<int> cr_missing_as_control(n);
  for (int q = 0; q < n; ++q) cr_missing_as_control[q] = q;
  int epr = 0;

  auto qubit_ok = [n](int q) { return q >= 0 && q < n; };
  auto qpu_ok = [m](int p) { return p >= 0 && p < m; };
  auto present = [&](int q, int p) { return where[q] == p || shared[q].count(p) > 0; };

  for (std::size_t idx = 0; idx < plan.events.size(); ++idx) {
    const QftEvent& e = plan.events[idx];
    const std::string at = "event " + std::to_string(idx) + ": ";
    if (!qubit_ok(e.qubit) || !qpu_ok(e.from)) {
      bad.push_back("event: " + at + "qubit or QPU out of range");
      continue;
    }
    const std::string q = std::to_string(e.qubit);
    switch (e.op) {
      case QftOp::kSwap:
        bad.push_back("swap: " + at + "SWAP on qubit " + q);
        break;
      case QftOp::kH:
        if (where[e.qubit] != e.from) {
          bad.push_back("colocation: " + at + "H(" + q + ") on QPU " +
                        std::to_string(e.from) + " but the qubit is elsewhere");
        }
        if (h_done[e.qubit]) bad.push_back("order: " + at + "second H on qubit " + q);
        if (cr_missing_as_control[e.qubit] != 0) {
          bad.push_back("order: " + at + "H(" + q + ") before all its CR controls ran");
        }
        h_done[e.qubit] = true;
        break;
      case QftOp::kCr: {
        const int c = e.control;
        const int t = e.qubit;
        if (!qubit_ok(c) || c <= t) {
          bad.push_back("order: " + at + "CR control must exceed target " + q);
          break;
        }
        const std::string name = "CR(" + std::to_string(c) + "->" + q + ")";
        if (!present(c, e.from) || !present(t, e.from)) {
          bad.push_back("colocation: " + at + name + " on QPU " + std::to_string(e.from) +
                        " without both qubits present");
        }
        if (!h_done[t] || h_done[c]) {
          bad.push_back("order: " + at + name + " outside the H ordering");
        }
        if (cr_done[c][t]) {
          bad.push_back("coverage: " + at + name + " applied twice");
        } else {
          cr_done[c][t] = true;
          --cr_missing_as_control[c];
        }
        break;
      }
      case QftOp::kTeleport:
        if (!qpu_ok(e.to) || e.to == e.from) {
          bad.push_back("event: " + at + "teleport needs a different target QPU");
          break;
        }
        if (where[e.qubit] != e.from) {
          bad.push_back("colocation: " + at + "teleport of qubit " + q + " from QPU " +
                        std::to_string(e.from) + " where it does not live");
        }
        --load[where[e.qubit]];
        where[e.qubit] = e.to;
        if (++load[e.to] > plan.capacity) {
          bad.push_back("capacity: " + at + "QPU " + std::to_string(e.to) + " holds " +
                        std::to_string(load[e.to]) + " qubits, capacity " +
                        std::to_string(plan.capacity));
        }
        ++epr;
        break;
      case QftOp::kCatEntangle:
        if (!qpu_ok(e.to) || e.to == e.from) {
          bad.push_back("event: " + at + "cat share needs a different target QPU");
          break;
        }
        if (where[e.qubit] != e.from) {
          bad.push_back("colocation: " + at + "cat share of qubit " + q +
                        " from a QPU where it does not live");
        }
        if (!shared[e.qubit].insert(e.to).second) {
          bad.push_back("order: " + at + "qubit " + q + " already shared there");
        }
        ++epr;
        break;
      case QftOp::kCatDisentangle:
        if (!qpu_ok(e.to) || shared[e.qubit].erase(e.to) == 0) {
          bad.push_back("order: " + at + "disentangling qubit " + q + " that is not shared");
        }
        break;
    }
  }

  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < c; ++t) {
      if (!cr_done[c][t]) {
        bad.push_back("coverage: CR(" + std::to_string(c) + "->" + std::to_string(t) +
                      ") never applied");
      }
    }
    if (!h_done[c]) bad.push_back("coverage: H(" + std::to_string(c) + ") never applied");
    if (!shared[c].empty()) {
      bad.push_back("order: qubit " + std::to_string(c) + " left with an open cat share");
    }
  }
  if (epr != plan.epr_used) {
    bad.push_back("epr: plan claims " + std::to_string(plan.epr_used) + ", replay counts " +
                  std::to_string(epr));
  }
  if (plan.final_layout.size() != static_cast<std::size_t>(n)) {
    bad.push_back("layout: final layout does not list every qubit");
    return bad;
  }
  for (int q = 0; q < n; ++q) {
    const QftSlot s = plan.final_layout[q];
    if (s.qpu != where[q]) {
      bad.push_back("layout: qubit " + std::to_string(q) + " ends on QPU " +
                    std::to_string(where[q]) + ", layout says " + std::to_string(s.qpu));
    } else if (s.slot < 0 || s.slot >= k || s.qpu * k + s.slot != n - 1 - q) {
      bad.push_back("layout: qubit " + std::to_string(q) + " is not in bit-reversed position");
    }
  }
  return bad;
}

int epr_in_step(const QftPlan& plan, int phase, int step) {
  return static_cast<int>(std::count_if(
      plan.events.begin(), plan.events.end(), [&](const QftEvent& e) {
        return e.phase == phase && e.step == step &&
               (e.op == QftOp::kTeleport || e.op == QftOp::kCatEntangle);
      }));
}

}  // namespace qdist
