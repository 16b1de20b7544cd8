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
#ifndef SNNPIPE_SIM_PIPELINE_SIM_HPP_
#define SNNPIPE_SIM_PIPELINE_SIM_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "snnpipe/cost/cost_model.hpp"
#include "snnpipe/sched/schedule.hpp"

namespace snnpipe::sim {

using cost::TaskKind;

// One task portion executed by a processor in a pipeline slot.
struct SlotEntry {
  int batch = 0;
  int layer = 0;
  TaskKind kind = TaskKind::kForward;
  int64_t cycles = 0;
  double fraction = 1.0;
};

// Pipelined execution of a schedule over a finite run of batches. Batch x runs
// its forward portions on processor p in slot x + p and its backward portions
// in slot x + 2 (P - 1) - p. Inside a slot a processor runs forward portions in
// layer order, then backward portions in reverse layer order, IG before WG.
struct ScheduleMap {
  int num_procs = 0;
  int n_batches = 0;
  int fill_depth = 0;          // first slot with every processor fully busy
  int64_t slot_cycles = 0;     // slot length (schedule makespan)
  int64_t steady_state_cycles = 0;  // busiest processor in any steady slot
  std::vector<double> utilization;  // per processor, load / slot length
  std::vector<std::vector<std::vector<SlotEntry>>> grid;  // [proc][slot]

  int num_slots() const { return grid.empty() ? 0 : static_cast<int>(grid.front().size()); }
  // Cycles executed by `proc` in `slot`.
  int64_t SlotLoad(int proc, int slot) const;
  // Text grid, one row per processor. Entries read <batch><task><layer>,
  // e.g. 3FP2 is the forward pass of layer 2 for batch 3; split portions carry
  // their share in percent.
  std::string ToText() const;
};

// Builds the grid and checks every dependency and weight-delay constraint.
// Throws SimulationError naming the offending task and slot.
ScheduleMap Simulate(const sched::Schedule& schedule, const cost::CostMatrix& costs, int n_batches = 0);

}  // namespace snnpipe::sim

#endif  // SNNPIPE_SIM_PIPELINE_SIM_HPP_
