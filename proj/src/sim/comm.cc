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
#include "snnpipe/sim/comm.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "snnpipe/errors.hpp"

namespace snnpipe::sim {

using cost::TaskKind;

void DataWidths::Validate() const {
  if (precision_bytes < 1) throw StructuralError("precision must be at least one byte");
  if (spike_bits < 1) throw StructuralError("spike width must be at least one bit");
}

namespace {

struct Portion {
  int proc;
  double lo;
  double hi;
};

using Interval = std::pair<double, double>;

// Portions of every (layer, task), in processor order, with their slices.
std::vector<std::array<std::vector<Portion>, 3>> Slices(const sched::Schedule& s, int layers) {
  std::vector<std::array<std::vector<Portion>, 3>> out(layers);
  std::vector<std::array<double, 3>> cursor(layers, {0.0, 0.0, 0.0});
  for (int p = 0; p < s.num_procs(); ++p) {
    for (const auto& a : s.processors[p]) {
      if (a.cycles == 0) continue;
      const int k = static_cast<int>(a.kind);
      const double lo = cursor[a.layer][k];
      const double hi = std::min(1.0, lo + a.fraction());
      cursor[a.layer][k] = hi;
      out[a.layer][k].push_back(Portion{p, lo, hi});
    }
  }
  return out;
}

double Overlap(const Interval& a, double lo, double hi) {
  return std::max(0.0, std::min(a.second, hi) - std::max(a.first, lo));
}

std::vector<Interval> Merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end());
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.first <= out.back().second) {
      out.back().second = std::max(out.back().second, iv.second);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

struct Need {
  const std::vector<Portion>* portions;
  bool whole;
};

// Bits of one tensor that cross processors.
double EdgeBits(const std::vector<Portion>& producer, const std::vector<Need>& consumers, int procs, double bits) {
  if (producer.empty()) return 0;
  double crossing = 0;
  for (int p = 0; p < procs; ++p) {
    std::vector<Interval> need;
    for (const Need& n : consumers) {
      for (const Portion& c : *n.portions) {
        if (c.proc != p) continue;
        need.push_back(n.whole ? Interval{0.0, 1.0} : Interval{c.lo, c.hi});
      }
    }
    for (const Interval& iv : Merge(std::move(need))) {
      for (const Portion& src : producer) {
        if (src.proc != p) crossing += Overlap(iv, src.lo, src.hi);
      }
    }
  }
  return crossing * bits;
}

}  // namespace

CommReport CommVolume(const NetworkSpec& net, const sched::Schedule& schedule, const cost::ArrayConfig& array,
                      int batch, const DataWidths& widths) {
  widths.Validate();
  array.Validate();
  if (batch < 0) throw StructuralError("batch must be >= 0");
  const std::vector<int> costed = net.costed_layers();
  const int layers = static_cast<int>(costed.size());
  const int procs = schedule.num_procs();
  CommReport r;
  if (batch == 0 || procs <= 1) return r;

  const auto slices = Slices(schedule, layers);
  auto of = [&](int l, TaskKind k) -> const std::vector<Portion>& { return slices[l][static_cast<int>(k)]; };
  const double word = 8.0 * widths.precision_bytes;
  const double frames = static_cast<double>(net.timesteps) * batch;

  double bits = 0, weight_bits = 0, halo_bits = 0;
  for (int l = 0; l < layers; ++l) {
    const LayerSpec& spec = net.layers[costed[l]];
    const bool conv = spec.kind == LayerKind::kConv;
    const double in_vals = static_cast<double>(spec.in.size()) * frames;
    const double out_vals = static_cast<double>(spec.out.size()) * frames;
    const auto& fp = of(l, TaskKind::kForward);
    const auto& wg = of(l, TaskKind::kWeightGrad);
    const auto& ig = of(l, TaskKind::kInputGrad);

    if (l > 0) {
      bits += EdgeBits(of(l - 1, TaskKind::kForward), {{&fp, !conv}, {&wg, true}}, procs,
                       in_vals * widths.spike_bits);
    }
    bits += EdgeBits(fp, {{&ig, false}, {&wg, true}}, procs, out_vals * (word + widths.spike_bits));
    if (l + 1 < layers) {
      const double g_vals = static_cast<double>(net.layers[costed[l + 1]].in.size()) * frames;
      bits += EdgeBits(of(l + 1, TaskKind::kInputGrad), {{&ig, false}, {&wg, true}}, procs, g_vals * word);
    }

    // Weights travel from the WG host to every FP/IG portion hosted elsewhere.
    const int host = wg.empty() ? -1 : wg.front().proc;
    const double w_bits = static_cast<double>(spec.param_count()) * word;
    const auto shape = cost::ShapeOf(net, costed[l], batch);
    for (TaskKind k : {TaskKind::kForward, TaskKind::kInputGrad}) {
      const auto& parts = of(l, k);
      const bool split = parts.size() > 1;
      const auto dims = cost::LayerTaskDims(shape, k);
      const double row_tiles = static_cast<double>((dims.n_rows + array.s_r - 1) / array.s_r);
      for (const Portion& part : parts) {
        if (part.proc == host) continue;
        if (!split) {
          bits += w_bits;
          continue;
        }
        // A portion inside a single row band only touches its column tiles.
        weight_bits += w_bits * std::min(1.0, (part.hi - part.lo) * row_tiles);
      }
      if (conv && split) {
        const double row = k == TaskKind::kForward
                               ? static_cast<double>(spec.in.w) * spec.in.c * (l == 0 ? word : widths.spike_bits)
                               : static_cast<double>(spec.out.w) * spec.out.c * word;
        for (std::size_t i = 1; i < parts.size(); ++i) {
          if (parts[i].proc != parts[i - 1].proc) halo_bits += (spec.kernel - 1) * row;
        }
      }
    }
  }
  r.total_bytes = bits / 8.0;
  r.weight_overhead_bytes = weight_bits / 8.0;
  r.halo_overhead_bytes = halo_bits / 8.0;
  r.overhead_bytes = r.weight_overhead_bytes + r.halo_overhead_bytes;
  r.overhead_pct = r.total_bytes > 0 ? 100.0 * r.overhead_bytes / r.total_bytes : 0.0;
  return r;
}

}  // namespace snnpipe::sim
