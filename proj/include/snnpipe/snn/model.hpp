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
#ifndef SNNPIPE_SNN_MODEL_HPP_
#define SNNPIPE_SNN_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "snnpipe/network.hpp"
#include "snnpipe/snn/lif.hpp"
#include "snnpipe/snn/synapse.hpp"
#include "snnpipe/snn/tensor.hpp"

namespace snnpipe::snn {

struct ModelLayer {
  LayerSpec spec;
  std::optional<SynapseGeometry> geom;  // conv, fc and output layers
  SynapseWeights weights;
  LifParams lif;
};

// Activations and neuron state recorded by one forward pass.
struct ForwardState {
  std::vector<SeqTensor> acts;      // acts[0] is the input; acts[i + 1] is layer i's output
  std::vector<LayerTensors> state;  // empty tensors for maxpool layers
  std::vector<std::vector<double>> logits;  // per sample, output v_m at T-1
};

struct ParamGrads {
  std::vector<double> g_w;
  std::vector<double> g_bias;
};

struct BatchGrads {
  double loss = 0;  // summed over the batch
  int correct = 0;
  std::vector<ParamGrads> layers;  // one entry per costed layer, network order
};

class SnnModel {
 public:
  // Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), zero biases.
  SnnModel(const NetworkSpec& net, uint64_t seed);

  const NetworkSpec& spec() const { return net_; }
  int num_classes() const;
  std::vector<ModelLayer>& layers() { return layers_; }
  const std::vector<ModelLayer>& layers() const { return layers_; }
  // Layer indices that carry parameters, matching BatchGrads::layers.
  const std::vector<int>& param_layers() const { return param_layers_; }

  // input: (T, B, input size).
  ForwardState Forward(const SeqTensor& input) const;
  // Gradients are summed over the batch.
  BatchGrads Backward(const ForwardState& fwd, std::span<const int> labels) const;
  static std::vector<int> Predict(const ForwardState& fwd);

 private:
  NetworkSpec net_;
  std::vector<ModelLayer> layers_;
  std::vector<int> param_layers_;
};

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_MODEL_HPP_
