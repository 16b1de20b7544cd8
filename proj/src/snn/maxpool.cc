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
#include "snnpipe/snn/maxpool.hpp"

#include <string>

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {

namespace {

void CheckPool(const SeqTensor& x, const Shape3& in, int window) {
  if (window < 1) throw StructuralError("maxpool window must be >= 1");
  if (in.h % window != 0 || in.w % window != 0) {
    throw StructuralError("maxpool: " + std::to_string(in.h) + "x" + std::to_string(in.w) +
                          " is not divisible by window " + std::to_string(window));
  }
  if (x.n != in.size()) throw StructuralError("maxpool: activation width does not match input shape");
}

// Flat input index of the winning position for pooled cell (c, py, px).
std::size_t ArgMax(std::span<const double> x, const Shape3& in, int window, int c, int py, int px) {
  std::size_t best = 0;
  double best_v = 0;
  bool first = true;
  for (int dy = 0; dy < window; ++dy) {
    for (int dx = 0; dx < window; ++dx) {
      const std::size_t i =
          (static_cast<std::size_t>(c) * in.h + py * window + dy) * in.w + px * window + dx;
      if (first || x[i] > best_v) {
        best = i;
        best_v = x[i];
        first = false;
      }
    }
  }
  return best;
}

}  // namespace

SeqTensor MaxPoolForward(const SeqTensor& spikes, const Shape3& in, int window) {
  CheckPool(spikes, in, window);
  const int ph = in.h / window, pw = in.w / window;
  SeqTensor out(spikes.t, spikes.b, ph * pw * in.c);
  for (int t = 0; t < spikes.t; ++t) {
    for (int b = 0; b < spikes.b; ++b) {
      auto x = spikes.frame(t, b);
      auto y = out.frame(t, b);
      for (int c = 0; c < in.c; ++c) {
        for (int py = 0; py < ph; ++py) {
          for (int px = 0; px < pw; ++px) {
            y[(static_cast<std::size_t>(c) * ph + py) * pw + px] = x[ArgMax(x, in, window, c, py, px)];
          }
        }
      }
    }
  }
  return out;
}

SeqTensor MaxPoolBackward(const SeqTensor& g_out, const SeqTensor& spikes, const Shape3& in, int window) {
  CheckPool(spikes, in, window);
  const int ph = in.h / window, pw = in.w / window;
  if (g_out.t != spikes.t || g_out.b != spikes.b || g_out.n != ph * pw * in.c) {
    throw StructuralError("maxpool backward: adjoint shape does not match the pooled output");
  }
  SeqTensor g_in(spikes.t, spikes.b, spikes.n);
  for (int t = 0; t < spikes.t; ++t) {
    for (int b = 0; b < spikes.b; ++b) {
      auto x = spikes.frame(t, b);
      auto gy = g_out.frame(t, b);
      auto gx = g_in.frame(t, b);
      for (int c = 0; c < in.c; ++c) {
        for (int py = 0; py < ph; ++py) {
          for (int px = 0; px < pw; ++px) {
            gx[ArgMax(x, in, window, c, py, px)] += gy[(static_cast<std::size_t>(c) * ph + py) * pw + px];
          }
        }
      }
    }
  }
  return g_in;
}

}  // namespace snnpipe::snn
