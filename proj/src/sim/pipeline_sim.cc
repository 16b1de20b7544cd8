/* Copyright 2026 The snnpipe Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "snnpipe/sim/pipeline_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <sstream>

#include "snnpipe/errors.hpp"

namespace snnpipe::sim {

namespace {

bool IsForward(TaskKind k) { return k == TaskKind::kForward; }

// Execution order inside one (processor, slot).
int OrderKey(const SlotEntry& e, int num_layers) {
  if (IsForward(e.kind)) return e.layer;
  const int rev = num_layers + 2 * (num_layers - 1 - e.layer);
  return e.kind == TaskKind::kInputGrad ? rev : rev + 1;
}

std::string TaskLabel(int layer, TaskKind k) {
  return std::string(cost::TaskKindName(k)) + std::to_string(layer + 1);
}

struct Placed {
  int slot;
  int proc;
  int order;
};

}  // namespace

int64_t ScheduleMap::SlotLoad(int proc, int slot) const {
  int64_t s = 0;
  for (const auto& e : grid.at(proc).at(slot)) s += e.cycles;
  return s;
}

std::string ScheduleMap::ToText() const {
  std::vector<std::vector<std::string>> cells(num_procs, std::vector<std::string>(num_slots()));
  std::vector<std::size_t> width(num_slots(), 1);
  for (int s = 0; s < num_slots(); ++s) width[s] = std::to_string(s).size();
  for (int p = 0; p < num_procs; ++p) {
    for (int s = 0; s < num_slots(); ++s) {
      std::string c;
      for (const auto& e : grid[p][s]) {
        if (!c.empty()) c += ' ';
        c += std::to_string(e.batch) + TaskLabel(e.layer, e.kind);
        if (e.fraction < 1.0) {
          char buf[16];
          std::snprintf(buf, sizeof buf, "[%.0f%%]", 100.0 * e.fraction);
          c += buf;
        }
      }
      if (c.empty()) c = ".";
      width[s] = std::max(width[s], c.size());
      cells[p][s] = std::move(c);
    }
  }
  std::ostringstream out;
  auto pad = [&](const std::string& text, int s) { return text + std::string(width[s] - text.size(), ' '); };
  out << "slot";
  for (int s = 0; s < num_slots(); ++s) out << " | " << pad(std::to_string(s), s);
  out << "\n";
  for (int p = 0; p < num_procs; ++p) {
    std::string label = "P" + std::to_string(p);
    out << label << std::string(label.size() < 4 ? 4 - label.size() : 0, ' ');
    for (int s = 0; s < num_slots(); ++s) out << " | " << pad(cells[p][s], s);
    out << "\n";
  }
  out << "fill depth " << fill_depth << " slots, steady state " << steady_state_cycles << " cycles per update\n";
  return out.str();
}

ScheduleMap Simulate(const sched::Schedule& schedule, const cost::CostMatrix& costs, int n_batches) {
  const int procs = schedule.num_procs();
  const int layers = costs.num_layers();
  if (procs < 1) throw SimulationError("schedule has no processors");
  if (n_batches == 0) n_batches = 2 * procs + 2;
  if (n_batches < 2 * procs - 1) {
    throw SimulationError("need at least " + std::to_string(2 * procs - 1) + " batches to reach steady state");
  }

  // Every task must be placed exactly once in full.
  std::vector<std::array<int64_t, 3>> placed(layers, {0, 0, 0});
  std::vector<int64_t> loads(procs, 0);
  for (int p = 0; p < procs; ++p) {
    for (const auto& a : schedule.processors[p]) {
      if (a.layer < 0 || a.layer >= layers) {
        throw SimulationError("P" + std::to_string(p) + " holds a task of unknown layer " + std::to_string(a.layer));
      }
      if (a.cycles < 0 || a.task_cycles != costs.at(a.layer, a.kind)) {
        throw SimulationError("P" + std::to_string(p) + ": " + TaskLabel(a.layer, a.kind) +
                              " does not match the cost matrix");
      }
      placed[a.layer][static_cast<int>(a.kind)] += a.cycles;
      loads[p] += a.cycles;
    }
  }
  for (int l = 0; l < layers; ++l) {
    for (TaskKind k : cost::kAllTasks) {
      if (placed[l][static_cast<int>(k)] != costs.at(l, k)) {
        throw SimulationError(TaskLabel(l, k) + ": placed " + std::to_string(placed[l][static_cast<int>(k)]) +
                              " of " + std::to_string(costs.at(l, k)) + " cycles");
      }
    }
  }
  const int64_t max_load = *std::max_element(loads.begin(), loads.end());
  if (max_load != schedule.makespan) {
    throw SimulationError("declared makespan " + std::to_string(schedule.makespan) + " != busiest processor " +
                          std::to_string(max_load));
  }

  ScheduleMap m;
  m.num_procs = procs;
  m.n_batches = n_batches;
  m.slot_cycles = schedule.makespan;
  m.fill_depth = 2 * (procs - 1);
  const int slots = n_batches + 2 * (procs - 1);
  m.grid.assign(procs, std::vector<std::vector<SlotEntry>>(slots));
  for (int x = 0; x < n_batches; ++x) {
    for (int p = 0; p < procs; ++p) {
      for (const auto& a : schedule.processors[p]) {
        if (a.cycles == 0) continue;
        const int slot = IsForward(a.kind) ? x + p : x + 2 * (procs - 1) - p;
        m.grid[p][slot].push_back(SlotEntry{x, a.layer, a.kind, a.cycles, a.fraction()});
      }
    }
  }
  for (auto& row : m.grid) {
    for (auto& cell : row) {
      std::stable_sort(cell.begin(), cell.end(), [&](const SlotEntry& a, const SlotEntry& b) {
        return OrderKey(a, layers) < OrderKey(b, layers);
      });
    }
  }

  // (batch, layer, kind) -> placements of its portions.
  std::map<std::array<int, 3>, std::vector<Placed>> where;
  for (int p = 0; p < procs; ++p) {
    for (int s = 0; s < slots; ++s) {
      for (int i = 0; i < static_cast<int>(m.grid[p][s].size()); ++i) {
        const auto& e = m.grid[p][s][i];
        where[{e.batch, e.layer, static_cast<int>(e.kind)}].push_back(Placed{s, p, i});
      }
    }
  }
  auto require = [&](const SlotEntry& e, const Placed& at, int layer, TaskKind k) {
    if (costs.at(layer, k) == 0) return;
    const auto it = where.find({e.batch, layer, static_cast<int>(k)});
    if (it == where.end()) {
      throw SimulationError("batch " + std::to_string(e.batch) + " " + TaskLabel(e.layer, e.kind) + " in slot " +
                            std::to_string(at.slot) + " needs " + TaskLabel(layer, k) + ", which never runs");
    }
    for (const Placed& src : it->second) {
      const bool before = src.slot < at.slot || (src.slot == at.slot && src.proc == at.proc && src.order < at.order);
      if (!before) {
        throw SimulationError("batch " + std::to_string(e.batch) + " " + TaskLabel(e.layer, e.kind) + " on P" +
                              std::to_string(at.proc) + " in slot " + std::to_string(at.slot) + " runs before " +
                              TaskLabel(layer, k) + " on P" + std::to_string(src.proc) + " in slot " +
                              std::to_string(src.slot));
      }
    }
  };
  for (int p = 0; p < procs; ++p) {
    for (int s = 0; s < slots; ++s) {
      for (int i = 0; i < static_cast<int>(m.grid[p][s].size()); ++i) {
        const SlotEntry& e = m.grid[p][s][i];
        const Placed at{s, p, i};
        if (IsForward(e.kind)) {
          if (e.layer > 0) require(e, at, e.layer - 1, TaskKind::kForward);
        } else {
          require(e, at, e.layer, TaskKind::kForward);
          if (e.layer + 1 < layers) require(e, at, e.layer + 1, TaskKind::kInputGrad);
        }
      }
    }
  }

  // Weights of layer l live on the host of WG_l. The gradient of batch t is
  // ready after slot t + 2(P-1) - q and must be applied before the host's
  // forward slot for batch t + D + 1.
  if (static_cast<int>(schedule.delays.size()) != layers) {
    throw SimulationError("schedule carries " + std::to_string(schedule.delays.size()) + " delays for " +
                          std::to_string(layers) + " layers");
  }
  for (int l = 0; l < layers; ++l) {
    const int q = schedule.WeightGradHost(l);
    if (q < 0) throw SimulationError(TaskLabel(l, TaskKind::kWeightGrad) + " is not placed");
    const int d = schedule.delays[l];
    if (d < 0) throw SimulationError("layer " + std::to_string(l + 1) + " has a negative delay");
    for (int t = 0; t + d + 1 < n_batches; ++t) {
      const int ready = t + 2 * (procs - 1) - q;
      const int used = t + d + 1 + q;
      if (ready >= used) {
        throw SimulationError("weight update of layer " + std::to_string(l + 1) + " for batch " +
                              std::to_string(t + d + 1) + " in slot " + std::to_string(used) +
                              " needs the gradient of batch " + std::to_string(t) + ", finished in slot " +
                              std::to_string(ready) + " (delay " + std::to_string(d) + ")");
      }
    }
  }

  for (int s = m.fill_depth; s < n_batches; ++s) {
    for (int p = 0; p < procs; ++p) {
      const int64_t load = m.SlotLoad(p, s);
      if (load != loads[p]) {
        throw SimulationError("P" + std::to_string(p) + " executes " + std::to_string(load) + " cycles in steady slot " +
                              std::to_string(s) + ", expected " + std::to_string(loads[p]));
      }
      m.steady_state_cycles = std::max(m.steady_state_cycles, load);
    }
  }
  if (m.steady_state_cycles != schedule.makespan) {
    throw SimulationError("steady-state slot length " + std::to_string(m.steady_state_cycles) + " != makespan " +
                          std::to_string(schedule.makespan));
  }
  for (int p = 0; p < procs; ++p) {
    m.utilization.push_back(schedule.makespan ? static_cast<double>(loads[p]) / schedule.makespan : 0.0);
  }
  return m;
}

}  // namespace snnpipe::sim
