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
#ifndef SNNPIPE_SNN_LOSS_HPP_
#define SNNPIPE_SNN_LOSS_HPP_

#include <span>
#include <vector>

namespace snnpipe::snn {

// One-hot targets for a batch.
struct LossSpec {
  int n_classes = 0;
  std::vector<std::vector<double>> y;

  void Validate() const;
  static LossSpec FromLabels(std::span<const int> labels, int n_classes);
};

struct OutputGrad {
  double loss = 0;
  std::vector<double> g_vm;   // dL/dv_m[T-1], one per class
  std::vector<double> g_iin;  // (timestep, class), T x N
};

std::vector<double> Softmax(std::span<const double> logits);

// Categorical cross-entropy over softmax(v_m[T-1]) for one sample. The
// accumulator output makes dL/di_in[n] = k dL/dv_m[T-1], k = 1 at n = T-1 else 2.
OutputGrad OutputLayerGrad(std::span<const double> v_m_final, std::span<const double> y, int timesteps);

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_LOSS_HPP_
