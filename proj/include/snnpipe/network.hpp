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
#ifndef SNNPIPE_NETWORK_HPP_
#define SNNPIPE_NETWORK_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace snnpipe {

enum class LayerKind { kConv, kFc, kMaxPool, kOutput };

const char* LayerKindName(LayerKind kind);

// Activation shape of one sample at one timestep. Flat layers use h = w = 1.
struct Shape3 {
  int h = 1;
  int w = 1;
  int c = 1;

  int64_t size() const { return int64_t{h} * w * c; }
  bool operator==(const Shape3&) const = default;
};

// Constants of the first-order IIR neuron used by every hidden layer.
struct NeuronConstants {
  double c = 4.0;
  double lambda = 0.25;
  double v_th = 0.5;
  double alpha = 0.5;
  bool operator==(const NeuronConstants&) const = default;
};

struct LayerSpec {
  LayerKind kind = LayerKind::kFc;
  std::string name;
  Shape3 in;
  Shape3 out;
  int kernel = 0;   // conv only
  int padding = 0;  // conv only, per side
  int window = 0;   // maxpool only

  // Layers that run on the systolic array (conv, fc, output).
  bool costed() const { return kind != LayerKind::kMaxPool; }
  // Weights plus one bias per output channel; zero for maxpool.
  int64_t param_count() const;

  bool operator==(const LayerSpec&) const = default;
};

struct NetworkSpec {
  std::string name;
  int timesteps = 1;
  int batch = 1;
  Shape3 input;
  NeuronConstants neuron;
  std::vector<LayerSpec> layers;

  // Throws StructuralError when the chain is inconsistent.
  void Validate() const;
  int64_t total_params() const;
  // Indices into `layers` of the costed layers, in network order.
  std::vector<int> costed_layers() const;

  bool operator==(const NetworkSpec&) const = default;
};

// Line-oriented network description, see data/networks/*.net for examples.
NetworkSpec ParseNetwork(std::istream& in, const std::string& source = "<input>");
NetworkSpec ParseNetworkFile(const std::string& path);
NetworkSpec ParseNetworkString(const std::string& text);
std::string SerializeNetwork(const NetworkSpec& net);

// Path of a network file shipped in data/networks (e.g. "mnist").
std::string BundledNetworkPath(const std::string& stem);

}  // namespace snnpipe

#endif  // SNNPIPE_NETWORK_HPP_
