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

#include "snnpipe/sched/partition.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "oracles.hpp"

namespace snnpipe::sched {
namespace {

// Least sum of squared loads among makespan-optimal splits, by enumeration.
double ExhaustiveSumSquares(const std::vector<int64_t>& w, int p, int64_t makespan) {
  const int n = static_cast<int>(w.size());
  const int chunks = std::min(p, n);
  double best = std::numeric_limits<double>::infinity();
  for (uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    if (__builtin_popcount(mask) != chunks - 1) continue;
    int64_t cur = 0, worst = 0;
    double ssq = 0;
    for (int i = 0; i < n; ++i) {
      cur += w[i];
      if (i == n - 1 || (mask >> i & 1u)) {
        worst = std::max(worst, cur);
        ssq += static_cast<double>(cur) * static_cast<double>(cur);
        cur = 0;
      }
    }
    if (worst == makespan) best = std::min(best, ssq);
  }
  return best;
}

TEST(PartitionTest, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> len(1, 10), procs(1, 12), zero(0, 5);
  std::uniform_int_distribution<int64_t> val(1, 20000);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int64_t> w(len(rng));
    for (auto& x : w) x = zero(rng) == 0 ? 0 : val(rng);
    const int p = procs(rng);
    const auto r = OptimalContiguousPartition(w, p);
    ASSERT_EQ(r.makespan, oracle::ExhaustiveMakespan(w, p));
    ASSERT_EQ(r.loads.size(), static_cast<std::size_t>(std::min<int>(p, static_cast<int>(w.size()))));
    ASSERT_EQ(r.chunk_end.back(), static_cast<int>(w.size()));
    int start = 0;
    double ssq = 0;
    for (std::size_t c = 0; c < r.loads.size(); ++c) {
      ASSERT_GT(r.chunk_end[c], start);
      EXPECT_EQ(r.loads[c], std::accumulate(w.begin() + start, w.begin() + r.chunk_end[c], int64_t{0}));
      EXPECT_LE(r.loads[c], r.makespan);
      ssq += static_cast<double>(r.loads[c]) * static_cast<double>(r.loads[c]);
      start = r.chunk_end[c];
    }
    EXPECT_EQ(ssq, ExhaustiveSumSquares(w, p, r.makespan));
  }
}

TEST(PartitionTest, SingleProcessorTakesEverything) {
  const std::vector<int64_t> w{5, 1, 9};
  const auto r = OptimalContiguousPartition(w, 1);
  EXPECT_EQ(r.makespan, 15);
  EXPECT_EQ(r.chunk_end, std::vector<int>{3});
}

TEST(PartitionTest, EqualMakespansPreferBalance) {
  const std::vector<int64_t> w{4, 2, 2, 4};
  const auto r = OptimalContiguousPartition(w, 3);
  EXPECT_EQ(r.makespan, 4);
  EXPECT_EQ(r.loads, (std::vector<int64_t>{4, 4, 4}));
  // {1,4}{1,4} beats {1,4,1}{4} and {1}{4,1,4}.
  const std::vector<int64_t> v{1, 4, 1, 4};
  EXPECT_EQ(OptimalContiguousPartition(v, 2).loads, (std::vector<int64_t>{5, 5}));
}

TEST(PartitionTest, EmptyInputAndBadCount) {
  EXPECT_EQ(OptimalContiguousPartition(std::vector<int64_t>{}, 3).makespan, 0);
  EXPECT_THROW(OptimalContiguousPartition(std::vector<int64_t>{1}, 0), std::invalid_argument);
}

}  // namespace
}  // namespace snnpipe::sched
