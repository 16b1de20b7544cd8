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
#ifndef SNNPIPE_SNN_DATASET_HPP_
#define SNNPIPE_SNN_DATASET_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "snnpipe/snn/tensor.hpp"

namespace snnpipe::snn {

// Labelled sequences, each sample stored (timestep, feature) row-major.
struct Dataset {
  int timesteps = 0;
  int features = 0;
  int n_classes = 0;
  std::vector<std::vector<double>> samples;
  std::vector<int> labels;

  std::size_t size() const { return samples.size(); }
  void Validate() const;
  // (T, |indices|, features) tensor of the selected samples.
  SeqTensor Batch(std::span<const std::size_t> indices) const;
};

// Text container:
//   # comment lines
//   timesteps=T,features=F,classes=K
//   label,x[0][0],x[0][1],...,x[T-1][F-1]     (one line per sample)
Dataset ReadDatasetCsv(std::istream& in, const std::string& source = "<stream>");
Dataset LoadDatasetCsv(const std::string& path);
void WriteDatasetCsv(std::ostream& out, const Dataset& d);
void SaveDatasetCsv(const std::string& path, const Dataset& d);

// Two-class spike-pattern task. Each class fires features of its own half at
// a high rate and the other half at a low rate; spikes are Bernoulli per step.
struct ToyTaskConfig {
  int samples = 200;
  int timesteps = 8;
  int features = 16;
  double high_rate = 0.6;
  double low_rate = 0.1;
};
Dataset MakeToySpikeTask(const ToyTaskConfig& cfg, uint64_t seed);

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_DATASET_HPP_
