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

#include "snnpipe/sim/pipeline_sim.hpp"

#include <gtest/gtest.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "snnpipe/errors.hpp"
#include "snnpipe/network.hpp"

namespace snnpipe::sim {
namespace {

using cost::ArrayConfig;
using sched::Allocation;
using sched::Schedule;

cost::CostMatrix Mnist32() {
  return cost::NetworkCost(ParseNetworkFile(BundledNetworkPath("mnist")), ArrayConfig{32, 32}, 1);
}

std::string ErrorOf(const Schedule& s, const cost::CostMatrix& c) {
  try {
    Simulate(s, c);
  } catch (const SimulationError& e) {
    return e.what();
  }
  return "";
}

TEST(PipelineSimTest, LayerwiseTwoProcessors) {
  const auto c = Mnist32();
  const auto m = Simulate(sched::ScheduleLayerwise(c, 2), c);
  EXPECT_EQ(m.steady_state_cycles, 26706);
  EXPECT_EQ(m.fill_depth, 2);
  EXPECT_EQ(m.n_batches, 6);
  EXPECT_EQ(m.num_slots(), 8);
  EXPECT_NEAR(m.utilization[0], 20250.0 / 26706.0, 1e-12);
  EXPECT_DOUBLE_EQ(m.utilization[1], 1.0);
}

TEST(PipelineSimTest, SingleProcessorIsSequential) {
  const auto c = Mnist32();
  for (sched::Scheme s : sched::kAllSchemes) {
    const auto m = Simulate(sched::MakeSchedule(s, c, 1), c, 3);
    EXPECT_EQ(m.steady_state_cycles, 46956);
    EXPECT_EQ(m.fill_depth, 0);
    for (int slot = 0; slot < 3; ++slot) EXPECT_EQ(m.SlotLoad(0, slot), 46956);
  }
}

TEST(PipelineSimTest, EveryGeneratedScheduleIsValid) {
  for (const char* stem : {"mnist", "nmnist", "dvs128"}) {
    const auto net = ParseNetworkFile(BundledNetworkPath(stem));
    for (int a : {16, 32, 256}) {
      for (int b : {1, 32}) {
        const auto c = cost::NetworkCost(net, ArrayConfig{a, a}, b);
        for (sched::Scheme scheme : sched::kAllSchemes) {
          for (int p = 1; p <= 12; ++p) {
            const auto s = sched::MakeSchedule(scheme, c, p);
            SCOPED_TRACE(std::string(stem) + " " + sched::SchemeName(scheme) + " P" + std::to_string(p));
            const ScheduleMap m = Simulate(s, c);
            EXPECT_EQ(m.steady_state_cycles, s.makespan);
            EXPECT_EQ(m.fill_depth, 2 * (s.num_procs() - 1));
            EXPECT_LE(m.fill_depth, 2 * p);
            // Each batch runs every task portion exactly once.
            std::map<std::tuple<int, int, int>, int64_t> done;
            for (int q = 0; q < m.num_procs; ++q) {
              for (int slot = 0; slot < m.num_slots(); ++slot) {
                EXPECT_LE(m.SlotLoad(q, slot), s.makespan);
                for (const auto& e : m.grid[q][slot]) {
                  done[{e.batch, e.layer, static_cast<int>(e.kind)}] += e.cycles;
                }
              }
            }
            for (int x = 0; x < m.n_batches; ++x) {
              for (int l = 0; l < c.num_layers(); ++l) {
                for (cost::TaskKind k : cost::kAllTasks) {
                  if (c.at(l, k) == 0) continue;
                  EXPECT_EQ((done[{x, l, static_cast<int>(k)}]), c.at(l, k));
                }
              }
            }
          }
        }
      }
    }
  }
}

TEST(PipelineSimTest, WeightGradientAheadOfItsProducerIsRejected) {
  const auto c = Mnist32();
  auto s = sched::ScheduleLayerwise(c, 4);
  // Move WG of conv1 to the last processor; its delay becomes 0 and it now
  // runs before IG of conv2 has been produced.
  auto& p0 = s.processors[0];
  for (auto it = p0.begin(); it != p0.end(); ++it) {
    if (it->kind == cost::TaskKind::kWeightGrad) {
      s.processors[3].push_back(*it);
      p0.erase(it);
      break;
    }
  }
  sched::Finalize(s, c.num_layers());
  ASSERT_EQ(s.delays[0], 0);
  const std::string err = ErrorOf(s, c);
  EXPECT_NE(err.find("runs before"), std::string::npos) << err;
}

TEST(PipelineSimTest, ShortDelayIsRejectedLongerIsAccepted) {
  const auto c = Mnist32();
  auto s = sched::ScheduleLayerwise(c, 4);
  ASSERT_EQ(s.delays, (std::vector<int>{6, 4, 2, 0}));
  s.delays[1] = 2;
  EXPECT_NE(ErrorOf(s, c).find("delay 2"), std::string::npos);
  s.delays[1] = 8;
  EXPECT_EQ(ErrorOf(s, c), "");
}

TEST(PipelineSimTest, BrokenBookkeepingIsRejected) {
  const auto c = Mnist32();
  const auto good = sched::ScheduleFineGrained(c, 4);
  auto missing = good;
  missing.processors[1].pop_back();
  EXPECT_NE(ErrorOf(missing, c), "");
  auto wrong_span = good;
  wrong_span.makespan -= 1;
  EXPECT_NE(ErrorOf(wrong_span, c).find("makespan"), std::string::npos);
  auto no_delays = good;
  no_delays.delays.pop_back();
  EXPECT_NE(ErrorOf(no_delays, c), "");
  // Forward pass of conv2 on an earlier processor than conv1's forward pass.
  auto reversed = sched::ScheduleLayerwise(c, 2);
  std::swap(reversed.processors[0], reversed.processors[1]);
  sched::Finalize(reversed, c.num_layers());
  EXPECT_NE(ErrorOf(reversed, c).find("runs before"), std::string::npos);
  EXPECT_THROW(Simulate(good, c, 6), SimulationError);
}

TEST(PipelineSimTest, TextMapListsBatchesPerProcessor) {
  const auto c = Mnist32();
  const auto m = Simulate(sched::ScheduleLayerwise(c, 2), c);
  const std::string text = m.ToText();
  EXPECT_NE(text.find("0FP1"), std::string::npos);
  EXPECT_NE(text.find("0WG4"), std::string::npos);
  EXPECT_NE(text.find("26706"), std::string::npos);
  const auto fg = Simulate(sched::ScheduleFineGrained(c, 4), c).ToText();
  EXPECT_NE(fg.find("%]"), std::string::npos);
}

}  // namespace
}  // namespace snnpipe::sim
