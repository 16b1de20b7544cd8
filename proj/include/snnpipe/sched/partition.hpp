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
#ifndef SNNPIPE_SCHED_PARTITION_HPP_
#define SNNPIPE_SCHED_PARTITION_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace snnpipe::sched {

// A split of a weight sequence into contiguous, non-empty chunks.
struct Partition {
  std::vector<int> chunk_end;  // exclusive end index of each chunk
  std::vector<int64_t> loads;
  int64_t makespan = 0;
};

// Splits `weights` into min(p, n) contiguous chunks minimizing the largest
// chunk sum. Among optimal partitions the one with the smallest sum of
// squared loads wins, then the lexicographically earliest cuts.
Partition OptimalContiguousPartition(std::span<const int64_t> weights, int p);

}  // namespace snnpipe::sched

#endif  // SNNPIPE_SCHED_PARTITION_HPP_
