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
#include "snnpipe/sim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "snnpipe/errors.hpp"
#include "snnpipe/sim/memory.hpp"
#include "snnpipe/sim/pipeline_sim.hpp"

namespace snnpipe::sim {

void SweepConfig::Validate() const {
  if (procs.empty() || batches.empty() || arrays.empty() || schemes.empty()) {
    throw StructuralError("sweep needs at least one processor count, batch, array and scheme");
  }
  for (int p : procs) {
    if (p < 1) throw StructuralError("processor counts must be >= 1");
  }
  for (int b : batches) {
    if (b < 1) throw StructuralError("batch sizes must be >= 1");
  }
  for (const auto& a : arrays) a.Validate();
  widths.Validate();
}

SweepConfig SweepConfig::Standard(int max_procs) {
  SweepConfig c;
  for (int p = 1; p <= max_procs; ++p) c.procs.push_back(p);
  for (int b = 1; b <= 128; b *= 2) c.batches.push_back(b);
  for (int a = 16; a <= 256; a *= 2) c.arrays.push_back({a, a});
  c.schemes.assign(std::begin(sched::kAllSchemes), std::end(sched::kAllSchemes));
  return c;
}

const SweepAggregate* SweepReport::Find(sched::Scheme scheme, int procs) const {
  for (const auto& a : aggregates) {
    if (a.scheme == scheme && a.procs == procs) return &a;
  }
  return nullptr;
}

double SweepReport::Improvement(int procs) const {
  const auto* fg = Find(sched::Scheme::kFineGrained, procs);
  const auto* pd = Find(sched::Scheme::kPipeDream, procs);
  if (!fg || !pd || pd->mean_speedup == 0) return 0;
  return 100.0 * (fg->mean_speedup / pd->mean_speedup - 1.0);
}

SweepReport RunSweep(const NetworkSpec& net, const SweepConfig& cfg) {
  cfg.Validate();
  net.Validate();

  struct Job {
    int batch;
    cost::ArrayConfig array;
  };
  std::vector<Job> jobs;
  for (int b : cfg.batches) {
    for (const auto& a : cfg.arrays) jobs.push_back({b, a});
  }
  const std::size_t per_job = cfg.procs.size() * cfg.schemes.size();
  std::vector<SweepRow> results(jobs.size() * per_job);
  std::vector<std::string> errors(jobs.size());

  auto run = [&](std::size_t j) {
    try {
      const Job& job = jobs[j];
      const auto costs = cost::NetworkCost(net, job.array, job.batch);
      std::size_t k = j * per_job;
      for (int p : cfg.procs) {
        const double mem = MemoryEstimate(net, p, job.batch, cfg.widths).peak_bytes;
        for (sched::Scheme s : cfg.schemes) {
          const auto schedule = sched::MakeSchedule(s, costs, p);
          const auto map = Simulate(schedule, costs);
          SweepRow& r = results[k++];
          r.scheme = s;
          r.procs = p;
          r.used_procs = schedule.num_procs();
          r.batch = job.batch;
          r.array = job.array;
          r.n_total = costs.n_total;
          r.makespan = schedule.makespan;
          r.steady_state_cycles = map.steady_state_cycles;
          r.speedup = schedule.speedup();
          r.delays = schedule.delays;
          r.comm = CommVolume(net, schedule, job.array, job.batch, cfg.widths);
          r.memory_peak_bytes = mem;
        }
      }
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  };
  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs.size())));
  if (threads == 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) run(j);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!errors[j].empty()) {
      throw SimulationError("sweep at batch " + std::to_string(jobs[j].batch) + ", array " +
                            jobs[j].array.ToString() + ": " + errors[j]);
    }
  }

  SweepReport rep;
  rep.network = net.name;
  for (std::size_t pi = 0; pi < cfg.procs.size(); ++pi) {
    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
      SweepAggregate a;
      a.scheme = cfg.schemes[si];
      a.procs = cfg.procs[pi];
      double total = 0, over = 0;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        const SweepRow& r = results[j * per_job + pi * cfg.schemes.size() + si];
        rep.rows.push_back(r);
        a.mean_speedup += r.speedup;
        a.min_speedup = a.runs == 0 ? r.speedup : std::min(a.min_speedup, r.speedup);
        a.max_speedup = std::max(a.max_speedup, r.speedup);
        total += r.comm.total_bytes;
        over += r.comm.overhead_bytes;
        a.max_overhead_bytes = std::max(a.max_overhead_bytes, r.comm.overhead_bytes);
        ++a.runs;
      }
      a.mean_speedup /= a.runs;
      a.mean_total_bytes = total / a.runs;
      a.mean_overhead_bytes = over / a.runs;
      a.overhead_pct = total > 0 ? 100.0 * over / total : 0.0;
      rep.aggregates.push_back(a);
    }
  }
  return rep;
}

}  // namespace snnpipe::sim
