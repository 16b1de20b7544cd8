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

#include <gtest/gtest.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "snnpipe/errors.hpp"
#include "snnpipe/network.hpp"

namespace snnpipe::cost {
namespace {

NetworkSpec Net(const std::string& stem) { return ParseNetworkFile(BundledNetworkPath(stem)); }

int64_t CeilDiv(int64_t a, int64_t b) { return a / b + (a % b != 0); }

// Cycles of one task from the layer description, independent of ShapeOf.
std::array<int64_t, 3> OracleCycles(const NetworkSpec& net, const LayerSpec& l, int batch, const ArrayConfig& a) {
  const int64_t tb = int64_t{net.timesteps} * batch;
  std::array<std::array<int64_t, 3>, 3> d{};  // rows, cols, mac per task
  if (l.kind == LayerKind::kConv) {
    const int64_t k2 = int64_t{l.kernel} * l.kernel;
    const int64_t out_px = int64_t{l.out.h} * l.out.w * tb;
    d[0] = {out_px, l.out.c, k2 * l.in.c};
    d[1] = {k2 * l.in.c, l.out.c, out_px};
    d[2] = {int64_t{l.in.h} * l.in.w * tb, l.in.c, k2 * l.out.c};
  } else {
    d[0] = {tb, l.out.size(), l.in.size()};
    d[1] = {l.in.size(), l.out.size(), tb};
    d[2] = {tb, l.in.size(), l.out.size()};
  }
  std::array<int64_t, 3> out{};
  for (int k = 0; k < 3; ++k) {
    out[k] = CeilDiv(d[k][0], a.s_r) * CeilDiv(d[k][1], a.s_c) * (d[k][2] + a.s_r + a.s_c - 2);
  }
  return out;
}

TEST(CostModelTest, MnistTableExact) {
  const auto m = NetworkCost(Net("mnist"), ArrayConfig{32, 32}, 1);
  const std::vector<std::array<int64_t, 3>> expect = {
      {13916, 6334, 0}, {6566, 4890, 6566}, {1816, 3640, 2470}, {190, 280, 288}};
  EXPECT_EQ(m.cycles, expect);
  EXPECT_EQ(m.n_total, 46956);
  EXPECT_EQ(m.layer_names, (std::vector<std::string>{"conv1", "conv2", "fc1", "output"}));
  EXPECT_TRUE(m.first_ig_excluded);
}

TEST(CostModelTest, FirstInputGradientWhenNotExcluded) {
  const auto m = NetworkCost(Net("mnist"), ArrayConfig{32, 32}, 1, false);
  EXPECT_EQ(m.at(0, TaskKind::kInputGrad), 26264);
  EXPECT_EQ(m.n_total, 46956 + 26264);
}

TEST(CostModelTest, TaskDimensionExamples) {
  const ConvShape conv1{.h = 30, .w = 30, .c = 1, .k = 3, .f = 8, .t = 8, .b = 1, .pad = 1};
  EXPECT_EQ(ConvTaskDims(conv1, TaskKind::kForward), (TaskDims{6272, 8, 9}));
  EXPECT_EQ(ConvTaskDims(conv1, TaskKind::kWeightGrad), (TaskDims{9, 8, 6272}));
  EXPECT_EQ(ConvTaskDims(conv1, TaskKind::kInputGrad), (TaskDims{6272, 1, 72}));
  const FcShape fc1{.q_in = 392, .q_out = 128, .t = 8, .b = 1};
  EXPECT_EQ(FcTaskDims(fc1, TaskKind::kWeightGrad), (TaskDims{392, 128, 8}));
  EXPECT_EQ(FcTaskDims(fc1, TaskKind::kForward), (TaskDims{8, 128, 392}));
  EXPECT_EQ(FcTaskDims(fc1, TaskKind::kInputGrad), (TaskDims{8, 392, 128}));
  const FcShape tiny{.q_in = 5, .q_out = 1, .t = 1, .b = 1};
  EXPECT_EQ(FcTaskDims(tiny, TaskKind::kForward).n_rows, 1);
}

TEST(CostModelTest, TilesAndSkew) {
  const ArrayConfig a{32, 32};
  EXPECT_EQ(NumTiles(6272, 8, a), 196);
  EXPECT_EQ(NumTiles(1, 1, a), 1);
  EXPECT_EQ(NumTiles(33, 33, a), 4);
  EXPECT_EQ(CyclesPerTile(9, a), 71);
  EXPECT_EQ(CyclesPerTile(1, ArrayConfig{1, 1}), 1);
  EXPECT_EQ(CyclesPerTile(392, a), 454);
}

TEST(CostModelTest, MatchesLayerFormulasAcrossSweep) {
  for (const char* stem : {"mnist", "nmnist", "dvs128"}) {
    const NetworkSpec net = Net(stem);
    for (int s : {16, 32, 64, 128, 256}) {
      for (int b : {1, 4, 128}) {
        const ArrayConfig a{s, s};
        const auto m = NetworkCost(net, a, b);
        int64_t total = 0;
        for (int l = 0; l < m.num_layers(); ++l) {
          auto ref = OracleCycles(net, net.layers[m.layer_index[l]], b, a);
          if (l == 0) ref[2] = 0;
          EXPECT_EQ(m.cycles[l], ref) << stem << " " << s << " b" << b << " layer " << l;
          for (int64_t v : ref) total += v;
        }
        EXPECT_EQ(m.n_total, total);
      }
    }
  }
}

TEST(CostModelTest, WorkAndThroughputLowerBounds) {
  for (const char* stem : {"mnist", "nmnist", "dvs128"}) {
    const NetworkSpec net = Net(stem);
    for (int idx : net.costed_layers()) {
      const auto shape = ShapeOf(net, idx, 2);
      for (TaskKind k : kAllTasks) {
        const auto d = LayerTaskDims(shape, k);
        for (int s : {16, 64, 256}) {
          const ArrayConfig a{s, s};
          const int64_t c = TaskCycles(d, a);
          EXPECT_GE(c, d.n_mac);
          EXPECT_GE(c * s * s, d.n_rows * d.n_cols * d.n_mac);
        }
      }
    }
  }
}

TEST(CostModelTest, LargerArrayNeverNeedsMoreTiles) {
  for (int64_t r : {1, 31, 32, 33, 1000, 6272}) {
    for (int64_t c : {1, 8, 128, 392}) {
      int64_t prev = NumTiles(r, c, ArrayConfig{8, 8});
      for (int s : {16, 32, 64, 128, 256}) {
        const int64_t cur = NumTiles(r, c, ArrayConfig{s, s});
        EXPECT_LE(cur, prev);
        prev = cur;
        EXPECT_EQ(CyclesPerTile(10, ArrayConfig{s, s + 1}) - CyclesPerTile(10, ArrayConfig{s, s}), 1);
      }
    }
  }
}

TEST(CostModelTest, BatchScalingApproachesLinear) {
  const NetworkSpec net = Net("mnist");
  const auto one = NetworkCost(net, ArrayConfig{32, 32}, 1);
  // Doubling the batch at most doubles the cost and tends to exactly double it.
  double ratio = 0;
  for (int k = 1; k <= 64; k *= 2) {
    ratio = static_cast<double>(NetworkCost(net, ArrayConfig{32, 32}, 2 * k).n_total) /
            static_cast<double>(NetworkCost(net, ArrayConfig{32, 32}, k).n_total);
    EXPECT_LE(ratio, 2.0);
  }
  EXPECT_NEAR(ratio, 2.0, 0.01);
  const auto two = NetworkCost(net, ArrayConfig{32, 32}, 2);
  for (int l = 0; l < one.num_layers(); ++l) {
    for (TaskKind k : kAllTasks) EXPECT_LE(two.at(l, k), 2 * one.at(l, k));
  }
}

TEST(CostModelTest, QuantumIsCyclesPerTile) {
  const auto m = NetworkCost(Net("mnist"), ArrayConfig{32, 32}, 1);
  EXPECT_EQ(m.quantum(0, TaskKind::kForward), 71);
  EXPECT_EQ(m.quantum(2, TaskKind::kForward), 454);
  for (int l = 0; l < m.num_layers(); ++l) {
    for (TaskKind k : kAllTasks) EXPECT_EQ(m.at(l, k) % m.quantum(l, k), 0);
  }
}

TEST(CostModelTest, ArrayParsing) {
  const auto a = ParseArray("64x16");
  EXPECT_EQ(a.s_r, 64);
  EXPECT_EQ(a.s_c, 16);
  EXPECT_EQ(a.ToString(), "64x16");
  EXPECT_THROW(ParseArray("64"), ParseError);
  EXPECT_THROW(ParseArray("0x4"), StructuralError);
  EXPECT_THROW(ParseArray("4xq"), ParseError);
}

}  // namespace
}  // namespace snnpipe::cost
