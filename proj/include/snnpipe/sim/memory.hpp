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
#ifndef SNNPIPE_SIM_MEMORY_HPP_
#define SNNPIPE_SIM_MEMORY_HPP_

#include <string>
#include <vector>

#include "snnpipe/network.hpp"
#include "snnpipe/sim/comm.hpp"

namespace snnpipe::sim {

struct MemoryReport {
  std::vector<double> per_processor_bytes;
  double peak_bytes = 0;   // largest per-processor requirement
  double total_bytes = 0;  // everything on one processor
  std::string assumptions;
};

// Forward-pass state kept for the backward pass, per sample and timestep:
// the input in words, v_m in words plus v_sp in bits for every costed layer,
// pooled spikes in bits. Layers are grouped onto processors by an optimal
// contiguous partition of their bytes; maxpool and the input go with the
// neighbouring costed layer.
MemoryReport MemoryEstimate(const NetworkSpec& net, int procs, int batch, const DataWidths& widths = {});

}  // namespace snnpipe::sim

#endif  // SNNPIPE_SIM_MEMORY_HPP_
