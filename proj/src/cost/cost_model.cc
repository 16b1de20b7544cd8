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
#include "snnpipe/cost/cost_model.hpp"

#include <charconv>

#include "snnpipe/errors.hpp"

namespace snnpipe::cost {
namespace {

int64_t CeilDiv(int64_t a, int64_t b) { return (a + b - 1) / b; }

}  // namespace

const char* TaskKindName(TaskKind kind) {
  switch (kind) {
    case TaskKind::kForward:
      return "FP";
    case TaskKind::kWeightGrad:
      return "WG";
    case TaskKind::kInputGrad:
      return "IG";
  }
  return "?";
}

void ArrayConfig::Validate() const {
  if (s_r < 1 || s_c < 1) throw StructuralError("systolic array dims must be >= 1");
}

std::string ArrayConfig::ToString() const {
  return std::to_string(s_r) + "x" + std::to_string(s_c);
}

ArrayConfig ParseArray(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) throw ParseError("array size '" + text + "': expected RxC");
  ArrayConfig a;
  auto parse = [&](std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw ParseError("array size '" + text + "': expected RxC");
    }
  };
  std::string_view sv(text);
  parse(sv.substr(0, x), a.s_r);
  parse(sv.substr(x + 1), a.s_c);
  a.Validate();
  return a;
}

TaskDims ConvTaskDims(const ConvShape& s, TaskKind task) {
  const int64_t positions = s.h_out() * s.w_out() * s.t * s.b;
  switch (task) {
    case TaskKind::kForward:
      return {positions, s.f, s.k * s.k * s.c};
    case TaskKind::kWeightGrad:
      return {s.k * s.k * s.c, s.f, positions};
    case TaskKind::kInputGrad:
      // Rows follow the unpadded input; see the Conv1 input-gradient count.
      return {s.h_in() * s.w_in() * s.t * s.b, s.c, s.k * s.k * s.f};
  }
  return {};
}

TaskDims FcTaskDims(const FcShape& s, TaskKind task) {
  const int64_t steps = s.t * s.b;
  switch (task) {
    case TaskKind::kForward:
      return {steps, s.q_out, s.q_in};
    case TaskKind::kWeightGrad:
      return {s.q_in, s.q_out, steps};
    case TaskKind::kInputGrad:
      return {steps, s.q_in, s.q_out};
  }
  return {};
}

TaskDims LayerTaskDims(const LayerShape& s, TaskKind task) {
  if (const auto* conv = std::get_if<ConvShape>(&s)) return ConvTaskDims(*conv, task);
  return FcTaskDims(std::get<FcShape>(s), task);
}

int64_t NumTiles(int64_t n_rows, int64_t n_cols, const ArrayConfig& array) {
  return CeilDiv(n_rows, array.s_r) * CeilDiv(n_cols, array.s_c);
}

int64_t CyclesPerTile(int64_t n_mac, const ArrayConfig& array) {
  return n_mac + (array.s_r - 1) + (array.s_c - 1);
}

int64_t TaskCycles(const TaskDims& dims, const ArrayConfig& array) {
  return NumTiles(dims.n_rows, dims.n_cols, array) * CyclesPerTile(dims.n_mac, array);
}

LayerShape ShapeOf(const NetworkSpec& net, int layer_index, int batch) {
  const LayerSpec& l = net.layers.at(layer_index);
  switch (l.kind) {
    case LayerKind::kConv:
      return ConvShape{.h = l.in.h + 2 * l.padding,
                       .w = l.in.w + 2 * l.padding,
                       .c = l.in.c,
                       .k = l.kernel,
                       .f = l.out.c,
                       .t = net.timesteps,
                       .b = batch,
                       .pad = l.padding};
    case LayerKind::kFc:
    case LayerKind::kOutput:
      return FcShape{.q_in = l.in.size(), .q_out = l.out.size(), .t = net.timesteps, .b = batch};
    case LayerKind::kMaxPool:
      break;
  }
  throw StructuralError("layer '" + l.name + "' has no systolic-array workload");
}

void CostMatrix::Recompute() {
  n_total = 0;
  for (const auto& row : cycles) {
    for (int64_t v : row) n_total += v;
  }
}

CostMatrix NetworkCost(const NetworkSpec& net, const ArrayConfig& array, int batch,
                       bool exclude_first_ig) {
  array.Validate();
  if (batch < 1) throw StructuralError("batch must be >= 1");
  CostMatrix m;
  m.first_ig_excluded = exclude_first_ig;
  for (int idx : net.costed_layers()) {
    const LayerShape shape = ShapeOf(net, idx, batch);
    std::array<int64_t, 3> cyc{}, quantum{};
    for (TaskKind k : kAllTasks) {
      const TaskDims d = LayerTaskDims(shape, k);
      cyc[static_cast<int>(k)] = TaskCycles(d, array);
      quantum[static_cast<int>(k)] = CyclesPerTile(d.n_mac, array);
    }
    m.layer_names.push_back(net.layers[idx].name);
    m.layer_index.push_back(idx);
    m.cycles.push_back(cyc);
    m.tile_quantum.push_back(quantum);
  }
  if (m.cycles.empty()) throw StructuralError("network '" + net.name + "' has no costed layers");
  if (exclude_first_ig) m.cycles[0][static_cast<int>(TaskKind::kInputGrad)] = 0;
  m.Recompute();
  return m;
}

}  // namespace snnpipe::cost
