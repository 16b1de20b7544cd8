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
#ifndef SNNPIPE_SNN_MAXPOOL_HPP_
#define SNNPIPE_SNN_MAXPOOL_HPP_

#include "snnpipe/network.hpp"
#include "snnpipe/snn/tensor.hpp"

namespace snnpipe::snn {

// Per-timestep logical OR over each window (max of binary values).
SeqTensor MaxPoolForward(const SeqTensor& spikes, const Shape3& in, int window);

// Each pooled adjoint goes to the lowest row-major position in its window
// that holds the maximum; the rest of the window receives zero.
SeqTensor MaxPoolBackward(const SeqTensor& g_out, const SeqTensor& spikes, const Shape3& in, int window);

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_MAXPOOL_HPP_
