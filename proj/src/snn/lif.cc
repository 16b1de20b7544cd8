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
#include "snnpipe/snn/lif.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {

void LifParams::Validate() const {
  if (!(c > 0) || !(lambda >= 0) || !(c + lambda > 0)) {
    throw NumericDomainError("LIF constants need c > 0, lambda >= 0");
  }
  if (!(alpha > 0)) throw NumericDomainError("surrogate half-width alpha must be > 0");
}

LifParams LifParams::FromConstants(const NeuronConstants& n) {
  return LifParams{n.c, n.lambda, n.v_th, n.alpha, true};
}

LifParams LifParams::Accumulator() {
  return LifParams{1.0, 0.0, std::numeric_limits<double>::infinity(), 0.5, false};
}

double SurrogateGrad(double v_m, const LifParams& p) {
  return std::abs(v_m - p.v_th) <= p.alpha ? 1.0 / (2.0 * p.alpha) : 0.0;
}

void LifForwardStrided(const double* i_in, double* v_m, double* v_sp, double* d, int steps,
                       std::ptrdiff_t stride, const LifParams& p) {
  const double inv = 1.0 / (p.c + p.lambda);
  const double fb = p.c - p.lambda;
  double reg = 0.0;
  for (int n = 0; n < steps; ++n) {
    const double x = i_in[n * stride];
    if (!std::isfinite(x)) {
      throw NumericDomainError("non-finite input current at timestep " + std::to_string(n));
    }
    const double w = (x + fb * reg) * inv;
    const double v = w + reg;
    const double spike = v >= p.v_th ? 1.0 : 0.0;
    reg = p.reset ? (1.0 - spike) * w : w;
    v_m[n * stride] = v;
    v_sp[n * stride] = spike;
    d[n * stride] = reg;
  }
}

void LifBackwardStrided(const double* g_vsp, const double* v_sp, const double* v_m, double* g_iin,
                        int steps, std::ptrdiff_t stride, const LifParams& p) {
  const double inv = 1.0 / (p.c + p.lambda);
  const double fb = (p.c - p.lambda) * inv;
  double g_next = 0.0;  // g_vm[n + 1]
  for (int n = steps - 1; n >= 0; --n) {
    const double gate = p.reset ? 1.0 - v_sp[n * stride] : 1.0;
    const double g_vm = g_vsp[n * stride] * SurrogateGrad(v_m[n * stride], p) + g_next * gate * fb;
    g_iin[n * stride] = (g_vm + gate * g_next) * inv;
    g_next = g_vm;
  }
}

LifTrace LifForward(std::span<const double> i_in, const LifParams& p) {
  p.Validate();
  if (i_in.empty()) throw StructuralError("LIF input sequence must have at least one timestep");
  const int steps = static_cast<int>(i_in.size());
  LifTrace t{std::vector<double>(steps), std::vector<double>(steps), std::vector<double>(steps)};
  LifForwardStrided(i_in.data(), t.v_m.data(), t.v_sp.data(), t.d.data(), steps, 1, p);
  return t;
}

std::vector<double> LifBackward(std::span<const double> g_vsp, std::span<const double> v_sp,
                                std::span<const double> v_m, const LifParams& p) {
  p.Validate();
  if (g_vsp.size() != v_sp.size() || g_vsp.size() != v_m.size()) {
    throw StructuralError("LIF backward: sequence lengths differ (" + std::to_string(g_vsp.size()) +
                          ", " + std::to_string(v_sp.size()) + ", " + std::to_string(v_m.size()) + ")");
  }
  std::vector<double> g(g_vsp.size());
  LifBackwardStrided(g_vsp.data(), v_sp.data(), v_m.data(), g.data(), static_cast<int>(g.size()), 1, p);
  return g;
}

}  // namespace snnpipe::snn
