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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "snnpipe/errors.hpp"
#include "snnpipe/network.hpp"

namespace snnpipe::sim {
namespace {

NetworkSpec Mnist() { return ParseNetworkFile(BundledNetworkPath("mnist")); }

SweepConfig Small() {
  SweepConfig c = SweepConfig::Standard(4);
  c.batches = {1, 8};
  c.arrays = {cost::ArrayConfig{16, 16}, cost::ArrayConfig{64, 64}};
  return c;
}

TEST(SweepTest, StandardGrid) {
  const auto c = SweepConfig::Standard(12);
  EXPECT_EQ(c.procs.size(), 12u);
  EXPECT_EQ(c.batches, (std::vector<int>{1, 2, 4, 8, 16, 32, 64, 128}));
  ASSERT_EQ(c.arrays.size(), 5u);
  EXPECT_EQ(c.arrays.front().s_r, 16);
  EXPECT_EQ(c.arrays.back().s_c, 256);
  EXPECT_EQ(c.schemes.size(), 4u);
}

TEST(SweepTest, OneProcessorIsExactlyOne) {
  const auto rep = RunSweep(Mnist(), Small());
  for (sched::Scheme s : sched::kAllSchemes) {
    const auto* a = rep.Find(s, 1);
    ASSERT_NE(a, nullptr);
    EXPECT_EQ(a->mean_speedup, 1.0);
    EXPECT_EQ(a->min_speedup, 1.0);
    EXPECT_EQ(a->max_speedup, 1.0);
  }
}

TEST(SweepTest, AggregatesSummariseRows) {
  const auto rep = RunSweep(Mnist(), Small());
  EXPECT_EQ(rep.rows.size(), 4u * 4u * 2u * 2u);
  EXPECT_EQ(rep.aggregates.size(), 16u);
  for (const auto& a : rep.aggregates) {
    double sum = 0, total = 0, over = 0, lo = 1e300, hi = 0, worst = 0;
    int n = 0;
    for (const auto& r : rep.rows) {
      if (r.scheme != a.scheme || r.procs != a.procs) continue;
      sum += r.speedup;
      lo = std::min(lo, r.speedup);
      hi = std::max(hi, r.speedup);
      total += r.comm.total_bytes;
      over += r.comm.overhead_bytes;
      worst = std::max(worst, r.comm.overhead_bytes);
      EXPECT_EQ(r.steady_state_cycles, r.makespan);
      ++n;
    }
    ASSERT_EQ(n, a.runs);
    EXPECT_DOUBLE_EQ(a.mean_speedup, sum / n);
    EXPECT_EQ(a.min_speedup, lo);
    EXPECT_EQ(a.max_speedup, hi);
    EXPECT_DOUBLE_EQ(a.mean_total_bytes, total / n);
    EXPECT_DOUBLE_EQ(a.mean_overhead_bytes, over / n);
    EXPECT_EQ(a.max_overhead_bytes, worst);
    EXPECT_DOUBLE_EQ(a.overhead_pct, total > 0 ? 100 * over / total : 0.0);
  }
  const auto* fg = rep.Find(sched::Scheme::kFineGrained, 4);
  const auto* pd = rep.Find(sched::Scheme::kPipeDream, 4);
  EXPECT_DOUBLE_EQ(rep.Improvement(4), 100 * (fg->mean_speedup / pd->mean_speedup - 1));
  EXPECT_EQ(rep.Find(sched::Scheme::kFineGrained, 99), nullptr);
}

TEST(SweepTest, RowOrder) {
  const auto rep = RunSweep(Mnist(), Small());
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    const auto key = [](const SweepRow& r) {
      return std::tuple(r.procs, static_cast<int>(r.scheme), r.batch, r.array.s_r);
    };
    EXPECT_LT(key(a), key(b));
  }
}

TEST(SweepTest, ThreadsDoNotChangeResults) {
  auto cfg = Small();
  const auto one = RunSweep(Mnist(), cfg);
  cfg.threads = 4;
  const auto many = RunSweep(Mnist(), cfg);
  ASSERT_EQ(one.rows.size(), many.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    EXPECT_EQ(one.rows[i].makespan, many.rows[i].makespan);
    EXPECT_EQ(one.rows[i].comm.total_bytes, many.rows[i].comm.total_bytes);
    EXPECT_EQ(one.rows[i].delays, many.rows[i].delays);
  }
}

TEST(SweepTest, RejectsEmptyRanges) {
  auto c = Small();
  c.procs.clear();
  EXPECT_THROW(c.Validate(), StructuralError);
  c = Small();
  c.batches = {0};
  EXPECT_THROW(c.Validate(), StructuralError);
  c = Small();
  c.schemes.clear();
  EXPECT_THROW(RunSweep(Mnist(), c), StructuralError);
}

}  // namespace
}  // namespace snnpipe::sim
