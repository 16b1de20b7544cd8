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
#include "snnpipe/snn/synapse.hpp"

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {

SynapseGeometry SynapseGeometry::FromLayer(const LayerSpec& l) {
  if (l.kind != LayerKind::kConv && l.kind != LayerKind::kFc && l.kind != LayerKind::kOutput) {
    throw StructuralError("layer " + l.name + " has no synapses");
  }
  SynapseGeometry g;
  g.name = l.name;
  g.conv = l.kind == LayerKind::kConv;
  g.in = l.in;
  g.out = l.out;
  g.kernel = g.conv ? l.kernel : 1;
  g.padding = g.conv ? l.padding : 0;
  if (!g.conv) {
    g.in = Shape3{1, 1, static_cast<int>(l.in.size())};
    g.out = Shape3{1, 1, static_cast<int>(l.out.size())};
  }
  return g;
}

SynapseGeometry SynapseGeometry::Fc(std::string name, int q_in, int q_out) {
  SynapseGeometry g;
  g.name = std::move(name);
  g.in = Shape3{1, 1, q_in};
  g.out = Shape3{1, 1, q_out};
  return g;
}

std::size_t SynapseGeometry::weight_count() const {
  if (conv) return static_cast<std::size_t>(out.c) * in.c * kernel * kernel;
  return static_cast<std::size_t>(out.c) * in.c;
}

namespace {

void CheckShapes(const SeqTensor& act, const SynapseGeometry& g, const SynapseWeights& w) {
  const std::string where = "layer " + g.name + ": ";
  if (act.n != g.in.size()) {
    throw StructuralError(where + "activation width " + std::to_string(act.n) + " != expected " +
                          std::to_string(g.in.size()));
  }
  if (w.w.size() != g.weight_count()) {
    throw StructuralError(where + "weight count " + std::to_string(w.w.size()) + " != expected " +
                          std::to_string(g.weight_count()));
  }
  if (w.bias.size() != static_cast<std::size_t>(g.out.c)) {
    throw StructuralError(where + "bias count " + std::to_string(w.bias.size()) + " != " +
                          std::to_string(g.out.c));
  }
  if (g.conv) {
    if (g.in.h + 2 * g.padding - g.kernel + 1 != g.out.h || g.in.w + 2 * g.padding - g.kernel + 1 != g.out.w) {
      throw StructuralError(where + "kernel does not fit the padded input");
    }
  }
}

}  // namespace

SeqTensor SynapticForward(const SeqTensor& act, const SynapseGeometry& g, const SynapseWeights& w) {
  CheckShapes(act, g, w);
  SeqTensor out(act.t, act.b, static_cast<int>(g.out.size()));
  const int cin = g.in.c, cout = g.out.c;
  for (int t = 0; t < act.t; ++t) {
    for (int b = 0; b < act.b; ++b) {
      auto x = act.frame(t, b);
      auto y = out.frame(t, b);
      if (!g.conv) {
        for (int o = 0; o < cout; ++o) {
          const double* row = w.w.data() + static_cast<std::size_t>(o) * cin;
          double s = w.bias[o];
          for (int i = 0; i < cin; ++i) s += row[i] * x[i];
          y[o] = s;
        }
        continue;
      }
      const int k = g.kernel, pad = g.padding;
      const int hi = g.in.h, wi = g.in.w, ho = g.out.h, wo = g.out.w;
      for (int f = 0; f < cout; ++f) {
        for (int oy = 0; oy < ho; ++oy) {
          for (int ox = 0; ox < wo; ++ox) {
            double s = w.bias[f];
            for (int c = 0; c < cin; ++c) {
              const double* kw = w.w.data() + (static_cast<std::size_t>(f) * cin + c) * k * k;
              for (int ky = 0; ky < k; ++ky) {
                const int iy = oy + ky - pad;
                if (iy < 0 || iy >= hi) continue;
                for (int kx = 0; kx < k; ++kx) {
                  const int ix = ox + kx - pad;
                  if (ix < 0 || ix >= wi) continue;
                  s += kw[ky * k + kx] * x[(static_cast<std::size_t>(c) * hi + iy) * wi + ix];
                }
              }
            }
            y[(static_cast<std::size_t>(f) * ho + oy) * wo + ox] = s;
          }
        }
      }
    }
  }
  return out;
}

SynapseGrads BackwardThroughWeights(const SeqTensor& g_iin, const SeqTensor& act, const SynapseGeometry& g,
                                    const SynapseWeights& w) {
  CheckShapes(act, g, w);
  if (g_iin.t != act.t || g_iin.b != act.b || g_iin.n != g.out.size()) {
    throw StructuralError("layer " + g.name + ": adjoint shape does not match the forward call");
  }
  SynapseGrads r{std::vector<double>(w.w.size(), 0.0), std::vector<double>(w.bias.size(), 0.0),
                 SeqTensor(act.t, act.b, act.n)};
  const int cin = g.in.c, cout = g.out.c;
  for (int t = 0; t < act.t; ++t) {
    for (int b = 0; b < act.b; ++b) {
      auto x = act.frame(t, b);
      auto gy = g_iin.frame(t, b);
      auto gx = r.g_prev.frame(t, b);
      if (!g.conv) {
        for (int o = 0; o < cout; ++o) {
          const double go = gy[o];
          r.g_bias[o] += go;
          const double* row = w.w.data() + static_cast<std::size_t>(o) * cin;
          double* grow = r.g_w.data() + static_cast<std::size_t>(o) * cin;
          for (int i = 0; i < cin; ++i) {
            grow[i] += go * x[i];
            gx[i] += go * row[i];
          }
        }
        continue;
      }
      const int k = g.kernel, pad = g.padding;
      const int hi = g.in.h, wi = g.in.w, ho = g.out.h, wo = g.out.w;
      for (int f = 0; f < cout; ++f) {
        for (int oy = 0; oy < ho; ++oy) {
          for (int ox = 0; ox < wo; ++ox) {
            const double go = gy[(static_cast<std::size_t>(f) * ho + oy) * wo + ox];
            r.g_bias[f] += go;
            for (int c = 0; c < cin; ++c) {
              const std::size_t kbase = (static_cast<std::size_t>(f) * cin + c) * k * k;
              for (int ky = 0; ky < k; ++ky) {
                const int iy = oy + ky - pad;
                if (iy < 0 || iy >= hi) continue;
                for (int kx = 0; kx < k; ++kx) {
                  const int ix = ox + kx - pad;
                  if (ix < 0 || ix >= wi) continue;
                  const std::size_t xi = (static_cast<std::size_t>(c) * hi + iy) * wi + ix;
                  r.g_w[kbase + ky * k + kx] += go * x[xi];
                  gx[xi] += go * w.w[kbase + ky * k + kx];
                }
              }
            }
          }
        }
      }
    }
  }
  return r;
}

}  // namespace snnpipe::snn
