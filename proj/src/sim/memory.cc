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
#include "snnpipe/sim/memory.hpp"

#include <algorithm>

#include "snnpipe/errors.hpp"
#include "snnpipe/sched/partition.hpp"

namespace snnpipe::sim {

MemoryReport MemoryEstimate(const NetworkSpec& net, int procs, int batch, const DataWidths& widths) {
  widths.Validate();
  if (procs < 1) throw StructuralError("processor count must be >= 1");
  if (batch < 0) throw StructuralError("batch must be >= 0");
  const int64_t word = 8LL * widths.precision_bytes;
  const int64_t frames = int64_t{net.timesteps} * batch;

  // Bits per costed layer, maxpool output folded into the layer before it.
  std::vector<int64_t> bits{net.input.size() * word * frames};
  bool opened = false;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const LayerSpec& l = net.layers[i];
    if (l.kind == LayerKind::kMaxPool) {
      bits.back() += l.out.size() * widths.spike_bits * frames;
      continue;
    }
    const int64_t b = l.out.size() * (word + widths.spike_bits) * frames;
    if (opened) {
      bits.push_back(b);
    } else {
      bits.back() += b;  // the input stays with the first layer
      opened = true;
    }
  }

  MemoryReport r;
  r.per_processor_bytes.assign(procs, 0.0);
  const auto part = sched::OptimalContiguousPartition(bits, procs);
  for (std::size_t c = 0; c < part.loads.size(); ++c) r.per_processor_bytes[c] = part.loads[c] / 8.0;
  for (int64_t b : bits) r.total_bytes += b / 8.0;
  r.peak_bytes = *std::max_element(r.per_processor_bytes.begin(), r.per_processor_bytes.end());
  r.assumptions = "input and membrane potentials at " + std::to_string(widths.precision_bytes) +
                  " bytes, spikes at " + std::to_string(widths.spike_bits) +
                  " bit(s); all timesteps of one batch kept for the backward pass; weights excluded";
  return r;
}

}  // namespace snnpipe::sim
