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

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace snnpipe::sched {

Partition OptimalContiguousPartition(std::span<const int64_t> weights, int p) {
  if (p < 1) throw std::invalid_argument("processor count must be >= 1");
  const int n = static_cast<int>(weights.size());
  Partition result;
  if (n == 0) return result;
  const int k_max = std::min(p, n);

  std::vector<int64_t> prefix(n + 1, 0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + weights[i];
  auto sum = [&](int i, int j) { return prefix[j] - prefix[i]; };

  constexpr int64_t kInf = std::numeric_limits<int64_t>::max();
  // best[k][i]: minimal max-chunk over suffix [i, n) cut into k chunks.
  std::vector<std::vector<int64_t>> best(k_max + 1, std::vector<int64_t>(n + 1, kInf));
  best[0][n] = 0;
  for (int k = 1; k <= k_max; ++k) {
    for (int i = n - k; i >= 0; --i) {
      int64_t b = kInf;
      for (int j = i + 1; j <= n - (k - 1); ++j) {
        if (best[k - 1][j] == kInf) continue;
        b = std::min(b, std::max(sum(i, j), best[k - 1][j]));
      }
      best[k][i] = b;
    }
  }
  const int64_t makespan = best[k_max][0];

  // Second pass: least sum of squares with every chunk <= makespan.
  using Wide = __int128;
  const Wide kWideInf = std::numeric_limits<int64_t>::max() * Wide{1} * 1000000;
  std::vector<std::vector<Wide>> ssq(k_max + 1, std::vector<Wide>(n + 1, kWideInf));
  ssq[0][n] = 0;
  for (int k = 1; k <= k_max; ++k) {
    for (int i = n - k; i >= 0; --i) {
      Wide b = kWideInf;
      for (int j = i + 1; j <= n - (k - 1); ++j) {
        const int64_t s = sum(i, j);
        if (s > makespan) break;
        if (ssq[k - 1][j] == kWideInf) continue;
        b = std::min(b, ssq[k - 1][j] + Wide{s} * s);
      }
      ssq[k][i] = b;
    }
  }

  int i = 0;
  for (int k = k_max; k >= 1; --k) {
    for (int j = i + 1; j <= n - (k - 1); ++j) {
      const int64_t s = sum(i, j);
      if (s > makespan) break;
      if (ssq[k - 1][j] != kWideInf && ssq[k - 1][j] + Wide{s} * s == ssq[k][i]) {
        result.chunk_end.push_back(j);
        result.loads.push_back(s);
        i = j;
        break;
      }
    }
  }
  result.makespan = makespan;
  return result;
}

}  // namespace snnpipe::sched
