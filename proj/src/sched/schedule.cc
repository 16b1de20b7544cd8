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
#include "snnpipe/sched/schedule.hpp"

#include <algorithm>
#include <stdexcept>

#include "snnpipe/errors.hpp"
#include "snnpipe/sched/partition.hpp"

namespace snnpipe::sched {
namespace {

// A unit the baseline schemes may not split: one or more whole tasks.
struct Item {
  std::vector<Task> tasks;
  int64_t weight() const {
    int64_t w = 0;
    for (const auto& t : tasks) w += t.cycles;
    return w;
  }
};

Task MakeTask(const CostMatrix& costs, int layer, TaskKind kind) {
  return Task{layer, kind, costs.at(layer, kind), costs.quantum(layer, kind)};
}

Schedule FromItems(Scheme scheme, const CostMatrix& costs, const std::vector<Item>& items, int p) {
  if (p < 1) throw StructuralError("processor count must be >= 1");
  std::vector<int64_t> weights;
  for (const auto& it : items) weights.push_back(it.weight());
  const Partition part = OptimalContiguousPartition(weights, p);

  Schedule s;
  s.scheme = scheme;
  s.requested_procs = p;
  int begin = 0;
  for (int end : part.chunk_end) {
    std::vector<Allocation> proc;
    for (int i = begin; i < end; ++i) {
      for (const Task& t : items[i].tasks) {
        if (t.cycles == 0) continue;
        proc.push_back(Allocation{t.layer, t.kind, t.cycles, t.cycles});
      }
    }
    s.processors.push_back(std::move(proc));
    begin = end;
  }
  s.n_total = costs.n_total;
  Finalize(s, costs.num_layers());
  return s;
}

}  // namespace

const char* SchemeName(Scheme s) {
  switch (s) {
    case Scheme::kLayerwise:
      return "layerwise";
    case Scheme::kPipeDream:
      return "pipedream";
    case Scheme::kSplit:
      return "split";
    case Scheme::kFineGrained:
      return "finegrained";
  }
  return "?";
}

Scheme ParseScheme(const std::string& name) {
  for (Scheme s : kAllSchemes) {
    if (name == SchemeName(s)) return s;
  }
  throw ParseError("unknown scheme '" + name + "' (layerwise|pipedream|split|finegrained)");
}

std::vector<int64_t> Schedule::loads() const {
  std::vector<int64_t> out;
  for (const auto& proc : processors) {
    int64_t load = 0;
    for (const auto& a : proc) load += a.cycles;
    out.push_back(load);
  }
  return out;
}

double Schedule::speedup() const {
  return makespan == 0 ? 0.0 : static_cast<double>(n_total) / static_cast<double>(makespan);
}

int Schedule::WeightGradHost(int layer) const {
  for (int p = 0; p < num_procs(); ++p) {
    for (const auto& a : processors[p]) {
      if (a.layer == layer && a.kind == TaskKind::kWeightGrad) return p;
    }
  }
  return -1;
}

SpeedupBounds Bounds(const CostMatrix& costs) {
  int64_t max_layer = 0, max_fp = 0, max_bp = 0, max_wg = 0, max_ig = 0;
  for (int l = 0; l < costs.num_layers(); ++l) {
    const int64_t fp = costs.at(l, TaskKind::kForward);
    const int64_t wg = costs.at(l, TaskKind::kWeightGrad);
    const int64_t ig = costs.at(l, TaskKind::kInputGrad);
    max_layer = std::max(max_layer, fp + wg + ig);
    max_fp = std::max(max_fp, fp);
    max_bp = std::max(max_bp, wg + ig);
    max_wg = std::max(max_wg, wg);
    max_ig = std::max(max_ig, ig);
  }
  const double total = static_cast<double>(costs.n_total);
  SpeedupBounds b;
  b.layerwise = total / static_cast<double>(max_layer);
  b.pipedream = total / static_cast<double>(std::max(max_fp, max_bp));
  b.split = total / static_cast<double>(std::max({max_fp, max_wg, max_ig}));
  b.finegrained = total / static_cast<double>(max_wg);
  return b;
}

Schedule ScheduleLayerwise(const CostMatrix& costs, int p) {
  std::vector<Item> items;
  for (int l = 0; l < costs.num_layers(); ++l) {
    items.push_back({{MakeTask(costs, l, TaskKind::kForward), MakeTask(costs, l, TaskKind::kWeightGrad),
                      MakeTask(costs, l, TaskKind::kInputGrad)}});
  }
  return FromItems(Scheme::kLayerwise, costs, items, p);
}

Schedule SchedulePipeDream(const CostMatrix& costs, int p) {
  std::vector<Item> items;
  for (int l = 0; l < costs.num_layers(); ++l) {
    items.push_back({{MakeTask(costs, l, TaskKind::kForward)}});
    items.push_back({{MakeTask(costs, l, TaskKind::kWeightGrad), MakeTask(costs, l, TaskKind::kInputGrad)}});
  }
  return FromItems(Scheme::kPipeDream, costs, items, p);
}

Schedule ScheduleSplitBackward(const CostMatrix& costs, int p) {
  std::vector<Item> items;
  for (int l = 0; l < costs.num_layers(); ++l) {
    for (TaskKind k : {TaskKind::kInputGrad, TaskKind::kWeightGrad, TaskKind::kForward}) {
      Task t = MakeTask(costs, l, k);
      if (t.cycles > 0) items.push_back({{t}});
    }
  }
  return FromItems(Scheme::kSplit, costs, items, p);
}

Schedule MakeSchedule(Scheme scheme, const CostMatrix& costs, int p) {
  switch (scheme) {
    case Scheme::kLayerwise:
      return ScheduleLayerwise(costs, p);
    case Scheme::kPipeDream:
      return SchedulePipeDream(costs, p);
    case Scheme::kSplit:
      return ScheduleSplitBackward(costs, p);
    case Scheme::kFineGrained:
      return ScheduleFineGrained(costs, p);
  }
  throw std::logic_error("unhandled scheme");
}

std::vector<int> AssignDelays(const Schedule& schedule) {
  int num_layers = 0;
  for (const auto& proc : schedule.processors) {
    for (const auto& a : proc) num_layers = std::max(num_layers, a.layer + 1);
  }
  const int procs = schedule.num_procs();
  std::vector<int> delays(num_layers, 0);
  for (int l = 0; l < num_layers; ++l) {
    const int host = schedule.WeightGradHost(l);
    if (host < 0) throw StructuralError("weight gradient of layer " + std::to_string(l) + " is not placed");
    delays[l] = 2 * (procs - 1 - host);
  }
  return delays;
}

void Finalize(Schedule& schedule, int num_layers) {
  while (!schedule.processors.empty() && schedule.processors.back().empty()) {
    schedule.processors.pop_back();
  }
  const auto loads = schedule.loads();
  schedule.makespan = loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
  schedule.delays = AssignDelays(schedule);
  schedule.delays.resize(num_layers, 0);
}

}  // namespace snnpipe::sched
