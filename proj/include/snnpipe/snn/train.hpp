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
#ifndef SNNPIPE_SNN_TRAIN_HPP_
#define SNNPIPE_SNN_TRAIN_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "snnpipe/network.hpp"
#include "snnpipe/snn/dataset.hpp"
#include "snnpipe/snn/optimizer.hpp"

namespace snnpipe::snn {

struct TrainConfig {
  OptimizerConfig optimizer;
  // Batch delay per parameterised layer in network order; empty means all zero.
  std::vector<int> delays;
  int epochs = 50;
  int batch = 32;
  uint64_t seed = 1;
};

struct EpochRecord {
  int epoch = 0;
  double loss = 0;      // mean training loss over the epoch's batches
  double accuracy = 0;  // accuracy on the full set after the epoch, in [0, 1]
  bool operator==(const EpochRecord&) const = default;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  double final_accuracy() const { return epochs.empty() ? 0.0 : epochs.back().accuracy; }
  bool operator==(const TrainHistory&) const = default;
};

// Delayed-gradient training: each layer's gradients pass through a FIFO of
// its delay before reaching the update rule.
TrainHistory Train(const NetworkSpec& net, const Dataset& data, const TrainConfig& cfg);

// Reference loop without any delay queues; the delays field is ignored.
TrainHistory TrainUndelayed(const NetworkSpec& net, const Dataset& data, const TrainConfig& cfg);

void WriteHistoryCsv(std::ostream& out, const TrainHistory& h);

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_TRAIN_HPP_
