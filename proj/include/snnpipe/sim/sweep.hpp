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
#ifndef SNNPIPE_SIM_SWEEP_HPP_
#define SNNPIPE_SIM_SWEEP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "snnpipe/cost/cost_model.hpp"
#include "snnpipe/network.hpp"
#include "snnpipe/sched/schedule.hpp"
#include "snnpipe/sim/comm.hpp"

namespace snnpipe::sim {

struct SweepConfig {
  std::vector<int> procs;
  std::vector<int> batches;
  std::vector<cost::ArrayConfig> arrays;
  std::vector<sched::Scheme> schemes;
  DataWidths widths;
  int threads = 1;

  void Validate() const;
  // Batch 1..128 in powers of two, arrays 16x16..256x256, all schemes.
  static SweepConfig Standard(int max_procs);
};

struct SweepRow {
  sched::Scheme scheme = sched::Scheme::kLayerwise;
  int procs = 1;       // requested
  int used_procs = 1;  // after dropping idle processors
  int batch = 1;
  cost::ArrayConfig array;
  int64_t n_total = 0;
  int64_t makespan = 0;
  int64_t steady_state_cycles = 0;
  double speedup = 1;
  std::vector<int> delays;
  CommReport comm;
  double memory_peak_bytes = 0;
};

// Mean over all batch and array sizes for one (scheme, P).
struct SweepAggregate {
  sched::Scheme scheme = sched::Scheme::kLayerwise;
  int procs = 1;
  int runs = 0;
  double mean_speedup = 0;
  double min_speedup = 0;
  double max_speedup = 0;
  double mean_total_bytes = 0;
  double mean_overhead_bytes = 0;
  double max_overhead_bytes = 0;
  double overhead_pct = 0;  // 100 * mean overhead / mean total
};

struct SweepReport {
  std::string network;
  std::vector<SweepRow> rows;              // procs, scheme, batch, array order
  std::vector<SweepAggregate> aggregates;  // procs, scheme order

  const SweepAggregate* Find(sched::Scheme scheme, int procs) const;
  // Gain of the fine-grained mean speedup over PipeDream at P, in percent.
  double Improvement(int procs) const;
};

// cost -> schedule -> simulate -> comm -> memory for every combination.
// Every schedule is validated by the simulator; a failure propagates.
SweepReport RunSweep(const NetworkSpec& net, const SweepConfig& cfg);

}  // namespace snnpipe::sim

#endif  // SNNPIPE_SIM_SWEEP_HPP_
