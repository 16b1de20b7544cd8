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
#ifndef SNNPIPE_COST_COST_MODEL_HPP_
#define SNNPIPE_COST_COST_MODEL_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "snnpipe/network.hpp"

namespace snnpipe::cost {

// Training tasks per layer, indexed as the columns of a cost matrix.
enum class TaskKind { kForward = 0, kWeightGrad = 1, kInputGrad = 2 };
inline constexpr std::array<TaskKind, 3> kAllTasks = {TaskKind::kForward, TaskKind::kWeightGrad,
                                                      TaskKind::kInputGrad};
const char* TaskKindName(TaskKind kind);  // "FP", "WG", "IG"

// Output-stationary systolic array of s_r x s_c MAC cells.
struct ArrayConfig {
  int s_r = 32;
  int s_c = 32;
  void Validate() const;
  std::string ToString() const;  // "32x32"
};
ArrayConfig ParseArray(const std::string& text);

// Convolution workload. h and w include padding.
struct ConvShape {
  int64_t h = 1, w = 1, c = 1, k = 1, f = 1, t = 1, b = 1;
  int64_t pad = 0;
  int64_t h_out() const { return h - k + 1; }
  int64_t w_out() const { return w - k + 1; }
  int64_t h_in() const { return h - 2 * pad; }
  int64_t w_in() const { return w - 2 * pad; }
};

struct FcShape {
  int64_t q_in = 1, q_out = 1, t = 1, b = 1;
};

using LayerShape = std::variant<ConvShape, FcShape>;

struct TaskDims {
  int64_t n_rows = 0;
  int64_t n_cols = 0;
  int64_t n_mac = 0;
  bool operator==(const TaskDims&) const = default;
};

TaskDims ConvTaskDims(const ConvShape& s, TaskKind task);
TaskDims FcTaskDims(const FcShape& s, TaskKind task);
TaskDims LayerTaskDims(const LayerShape& s, TaskKind task);

// ceil(rows / s_r) * ceil(cols / s_c)
int64_t NumTiles(int64_t n_rows, int64_t n_cols, const ArrayConfig& array);
// MAC depth plus the input and output skews.
int64_t CyclesPerTile(int64_t n_mac, const ArrayConfig& array);
int64_t TaskCycles(const TaskDims& dims, const ArrayConfig& array);

// Shape of costed layer `layer_index` (an index into net.layers) at `batch`.
LayerShape ShapeOf(const NetworkSpec& net, int layer_index, int batch);

struct CostMatrix {
  std::vector<std::string> layer_names;           // costed layers only
  std::vector<int> layer_index;                   // index into NetworkSpec::layers
  std::vector<std::array<int64_t, 3>> cycles;     // [layer][task]
  std::vector<std::array<int64_t, 3>> tile_quantum;
  int64_t n_total = 0;
  bool first_ig_excluded = true;

  int num_layers() const { return static_cast<int>(cycles.size()); }
  int64_t at(int layer, TaskKind k) const { return cycles[layer][static_cast<int>(k)]; }
  int64_t quantum(int layer, TaskKind k) const { return tile_quantum[layer][static_cast<int>(k)]; }
  void Recompute();  // refresh n_total from cycles
};

// Cycle counts for every costed layer. Maxpool layers cost nothing. With
// exclude_first_ig the first layer's input gradient is reported as 0.
CostMatrix NetworkCost(const NetworkSpec& net, const ArrayConfig& array, int batch,
                       bool exclude_first_ig = true);

}  // namespace snnpipe::cost

#endif  // SNNPIPE_COST_COST_MODEL_HPP_
