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
#ifndef SNNPIPE_SNN_SYNAPSE_HPP_
#define SNNPIPE_SNN_SYNAPSE_HPP_

#include <string>
#include <vector>

#include "snnpipe/network.hpp"
#include "snnpipe/snn/tensor.hpp"

namespace snnpipe::snn {

// Geometry of a weighted layer. fc layers use in = 1x1xQin, out = 1x1xQout.
struct SynapseGeometry {
  std::string name;
  bool conv = false;
  Shape3 in;
  Shape3 out;
  int kernel = 1;
  int padding = 0;

  static SynapseGeometry FromLayer(const LayerSpec& l);
  static SynapseGeometry Fc(std::string name, int q_in, int q_out);
  std::size_t weight_count() const;
};

// conv: w[((f * C + c) * K + ky) * K + kx]; fc: w[o * Qin + i]. One bias per
// output channel.
struct SynapseWeights {
  std::vector<double> w;
  std::vector<double> bias;
};

struct SynapseGrads {
  std::vector<double> g_w;
  std::vector<double> g_bias;
  SeqTensor g_prev;  // adjoint of the previous layer's activation
};

// Frames are laid out channel-major (c, y, x).
SeqTensor SynapticForward(const SeqTensor& act, const SynapseGeometry& g, const SynapseWeights& w);

SynapseGrads BackwardThroughWeights(const SeqTensor& g_iin, const SeqTensor& act, const SynapseGeometry& g,
                                    const SynapseWeights& w);

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_SYNAPSE_HPP_
