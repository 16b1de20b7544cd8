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
#ifndef SNNPIPE_SIM_COMM_HPP_
#define SNNPIPE_SIM_COMM_HPP_

#include "snnpipe/cost/cost_model.hpp"
#include "snnpipe/network.hpp"
#include "snnpipe/sched/schedule.hpp"

namespace snnpipe::sim {

// Storage widths. Spikes are binary; everything else is a word.
struct DataWidths {
  int precision_bytes = 4;  // potentials, currents, gradients, weights, real-valued input
  int spike_bits = 1;
  void Validate() const;
};

struct CommReport {
  double total_bytes = 0;     // baseline traffic between processors per weight update
  double overhead_bytes = 0;  // extra traffic caused by split tasks
  double weight_overhead_bytes = 0;
  double halo_overhead_bytes = 0;
  double overhead_pct = 0;    // 100 * overhead_bytes / total_bytes
};

// Each tensor is treated as a line of values; a task portion owns the slice
// matching its share of the task's tiles. Edges:
//   spikes into layer l    FP(l-1) -> FP(l), WG(l)
//   state of layer l       FP(l)   -> IG(l), WG(l)      (v_m words + v_sp bits)
//   gradient into layer l  IG(l+1) -> IG(l), WG(l)
// A processor receives the part of each operand it needs that lives elsewhere.
// Reduction operands of fc layers and all operands of WG are needed whole.
// Overhead counts the weights shipped to split FP/IG portions away from the
// WG host and the (K - 1) halo rows at every conv split boundary.
CommReport CommVolume(const NetworkSpec& net, const sched::Schedule& schedule, const cost::ArrayConfig& array,
                      int batch, const DataWidths& widths = {});

}  // namespace snnpipe::sim

#endif  // SNNPIPE_SIM_COMM_HPP_
