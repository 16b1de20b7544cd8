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
// Fine-grained allocation: processors are filled in pipeline order up to an
// ideal per-processor load. Forward and input-gradient tasks may be split
// across a processor boundary; weight gradients stay whole and may overflow
// a processor when at least half of them fits. If the last processor ends up
// above the target, the target is relaxed and allocation restarts.

#include <algorithm>
#include <cmath>
#include <vector>

#include "snnpipe/errors.hpp"
#include "snnpipe/sched/schedule.hpp"

namespace snnpipe::sched {
namespace {

struct Attempt {
  std::vector<std::vector<Allocation>> procs;
  std::vector<int64_t> load;
  bool accepted = false;
};

Attempt Allocate(const std::vector<Task>& order, int p, double ideal, bool quantize) {
  Attempt a;
  a.procs.assign(p, {});
  a.load.assign(p, 0);
  std::vector<int64_t> remaining;
  for (const auto& t : order) remaining.push_back(t.cycles);

  auto place = [&](int proc, size_t idx, int64_t cycles) {
    const Task& t = order[idx];
    a.procs[proc].push_back(Allocation{t.layer, t.kind, cycles, t.cycles});
    a.load[proc] += cycles;
    remaining[idx] -= cycles;
  };

  int proc = 0;
  size_t idx = 0;
  while (idx < order.size()) {
    if (remaining[idx] == 0) {
      ++idx;
      continue;
    }
    if (proc == p - 1) {
      for (; idx < order.size(); ++idx) {
        if (remaining[idx] > 0) place(proc, idx, remaining[idx]);
      }
      break;
    }
    const Task& t = order[idx];
    const int64_t need = remaining[idx];
    const double room = ideal - static_cast<double>(a.load[proc]);
    if (static_cast<double>(need) <= room) {
      place(proc, idx, need);
      ++idx;
      continue;
    }
    if (!t.splittable()) {
      if (static_cast<double>(need) / 2.0 <= room) {
        place(proc, idx, need);
        ++idx;
      }
    } else if (room > 0) {
      // Round the share up to whole tiles; the processor may exceed the
      // target by less than one tile.
      const int64_t q = quantize ? t.quantum : 1;
      int64_t share = static_cast<int64_t>(std::ceil(room / static_cast<double>(q))) * q;
      share = std::min(share, need);
      if (share > 0) place(proc, idx, share);
    }
    ++proc;
  }
  a.accepted = static_cast<double>(a.load[p - 1]) <= ideal;
  return a;
}

Schedule Run(const CostMatrix& costs, int p, const FineGrainedOptions& opts, bool first_to_last) {
  if (p < 1) throw StructuralError("processor count must be >= 1");
  if (!(opts.relaxation > 1.0)) throw StructuralError("relaxation factor must exceed 1");
  const int num_layers = costs.num_layers();
  std::vector<Task> order;
  auto push = [&](int l, TaskKind k) {
    Task t{l, k, costs.at(l, k), costs.quantum(l, k)};
    if (t.cycles > 0) order.push_back(t);
  };
  if (first_to_last) {
    for (int l = 0; l < num_layers; ++l) {
      for (TaskKind k : {TaskKind::kInputGrad, TaskKind::kWeightGrad, TaskKind::kForward}) push(l, k);
    }
  } else {
    for (int l = num_layers - 1; l >= 0; --l) {
      for (TaskKind k : {TaskKind::kForward, TaskKind::kInputGrad, TaskKind::kWeightGrad}) push(l, k);
    }
  }

  double ideal = static_cast<double>(costs.n_total) / p;
  Attempt a;
  for (;;) {
    a = Allocate(order, p, ideal, opts.quantize_splits);
    if (a.accepted) break;
    ideal *= opts.relaxation;
  }

  Schedule s;
  s.scheme = Scheme::kFineGrained;
  s.variant = first_to_last ? "first-to-last" : "last-to-first";
  s.requested_procs = p;
  s.n_total = costs.n_total;
  s.processors = std::move(a.procs);
  if (!first_to_last) {
    // Allocation filled processors from the back of the pipeline.
    std::reverse(s.processors.begin(), s.processors.end());
    while (!s.processors.empty() && s.processors.front().empty()) {
      s.processors.erase(s.processors.begin());
    }
  }
  Finalize(s, num_layers);
  return s;
}

}  // namespace

Schedule ScheduleFirstToLast(const CostMatrix& costs, int p, const FineGrainedOptions& opts) {
  return Run(costs, p, opts, true);
}

Schedule ScheduleLastToFirst(const CostMatrix& costs, int p, const FineGrainedOptions& opts) {
  return Run(costs, p, opts, false);
}

Schedule ScheduleFineGrained(const CostMatrix& costs, int p, const FineGrainedOptions& opts) {
  Schedule forward = ScheduleFirstToLast(costs, p, opts);
  Schedule backward = ScheduleLastToFirst(costs, p, opts);
  return backward.makespan < forward.makespan ? backward : forward;
}

}  // namespace snnpipe::sched
