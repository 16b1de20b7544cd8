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
#ifndef SNNPIPE_SCHED_SCHEDULE_HPP_
#define SNNPIPE_SCHED_SCHEDULE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "snnpipe/cost/cost_model.hpp"

namespace snnpipe::sched {

using cost::CostMatrix;
using cost::TaskKind;

enum class Scheme { kLayerwise, kPipeDream, kSplit, kFineGrained };
inline constexpr Scheme kAllSchemes[] = {Scheme::kLayerwise, Scheme::kPipeDream, Scheme::kSplit,
                                         Scheme::kFineGrained};
const char* SchemeName(Scheme s);  // "layerwise", "pipedream", "split", "finegrained"
Scheme ParseScheme(const std::string& name);

// One systolic-array task of one layer. Only the weight gradient is atomic.
struct Task {
  int layer = 0;
  TaskKind kind = TaskKind::kForward;
  int64_t cycles = 0;
  int64_t quantum = 1;  // cycles of one tile
  bool splittable() const { return kind != TaskKind::kWeightGrad; }
};

// A (possibly partial) task placed on a processor.
struct Allocation {
  int layer = 0;
  TaskKind kind = TaskKind::kForward;
  int64_t cycles = 0;       // cycles placed here
  int64_t task_cycles = 0;  // full task size
  double fraction() const {
    return task_cycles == 0 ? 0.0 : static_cast<double>(cycles) / static_cast<double>(task_cycles);
  }
  bool operator==(const Allocation&) const = default;
};

struct Schedule {
  Scheme scheme = Scheme::kLayerwise;
  std::string variant;   // allocation order used by the fine-grained scheme
  int requested_procs = 1;
  // Processors in pipeline order. Trailing processors without work are dropped.
  std::vector<std::vector<Allocation>> processors;
  std::vector<int> delays;  // per costed layer, in batches
  int64_t makespan = 0;
  int64_t n_total = 0;

  int num_procs() const { return static_cast<int>(processors.size()); }
  std::vector<int64_t> loads() const;
  double speedup() const;
  // Processor hosting the (atomic) weight gradient of `layer`, or -1.
  int WeightGradHost(int layer) const;
};

struct SpeedupBounds {
  double layerwise = 0;
  double pipedream = 0;
  double split = 0;
  double finegrained = 0;
};

SpeedupBounds Bounds(const CostMatrix& costs);

Schedule ScheduleLayerwise(const CostMatrix& costs, int p);
Schedule SchedulePipeDream(const CostMatrix& costs, int p);
Schedule ScheduleSplitBackward(const CostMatrix& costs, int p);

struct FineGrainedOptions {
  // Split FP/IG tasks on whole tiles. When false any cycle count is allowed.
  bool quantize_splits = true;
  double relaxation = 1.1;
};
Schedule ScheduleFineGrained(const CostMatrix& costs, int p, const FineGrainedOptions& opts = {});
// The two allocation orders on their own.
Schedule ScheduleFirstToLast(const CostMatrix& costs, int p, const FineGrainedOptions& opts = {});
Schedule ScheduleLastToFirst(const CostMatrix& costs, int p, const FineGrainedOptions& opts = {});

Schedule MakeSchedule(Scheme scheme, const CostMatrix& costs, int p);

// 2 * (P - 1 - host of WG_l) for every layer.
std::vector<int> AssignDelays(const Schedule& schedule);

// Recomputes makespan and delays from the processor lists.
void Finalize(Schedule& schedule, int num_layers);

}  // namespace snnpipe::sched

#endif  // SNNPIPE_SCHED_SCHEDULE_HPP_
