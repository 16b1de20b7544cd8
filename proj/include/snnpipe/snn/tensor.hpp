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
#ifndef SNNPIPE_SNN_TENSOR_HPP_
#define SNNPIPE_SNN_TENSOR_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace snnpipe::snn {

// Dense sequence tensor indexed (timestep, batch-sample, neuron). Storage is
// frame-major so one (t, b) frame of N neurons is contiguous.
struct SeqTensor {
  int t = 0;
  int b = 0;
  int n = 0;
  std::vector<double> data;

  SeqTensor() = default;
  SeqTensor(int steps, int batch, int width) : t(steps), b(batch), n(width), data(Size(steps, batch, width), 0.0) {}

  static std::size_t Size(int steps, int batch, int width) {
    return static_cast<std::size_t>(steps) * batch * width;
  }
  std::size_t Index(int ti, int bi, int ni) const {
    return (static_cast<std::size_t>(ti) * b + bi) * n + ni;
  }
  double& at(int ti, int bi, int ni) { return data[Index(ti, bi, ni)]; }
  double at(int ti, int bi, int ni) const { return data[Index(ti, bi, ni)]; }
  std::span<double> frame(int ti, int bi) { return {data.data() + Index(ti, bi, 0), static_cast<std::size_t>(n)}; }
  std::span<const double> frame(int ti, int bi) const {
    return {data.data() + Index(ti, bi, 0), static_cast<std::size_t>(n)};
  }
  // Distance between consecutive timesteps of one neuron.
  std::ptrdiff_t time_stride() const { return static_cast<std::ptrdiff_t>(b) * n; }
  bool SameShape(const SeqTensor& o) const { return t == o.t && b == o.b && n == o.n; }
};

// Forward state of one LIF layer.
struct LayerTensors {
  SeqTensor i_in;
  SeqTensor v_m;
  SeqTensor v_sp;
  SeqTensor d;
};

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_TENSOR_HPP_
