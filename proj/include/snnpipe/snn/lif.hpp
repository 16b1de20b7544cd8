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
#ifndef SNNPIPE_SNN_LIF_HPP_
#define SNNPIPE_SNN_LIF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "snnpipe/network.hpp"

namespace snnpipe::snn {

// Digital first-order section modelling a leaky integrate-and-fire neuron.
//   v_m[n] = (i_in[n] + (c - lambda) d[n-1]) / (c + lambda) + d[n-1]
//   d[n]   = (1 - v_sp[n]) (i_in[n] + (c - lambda) d[n-1]) / (c + lambda)
// With reset disabled the delay register is never cleared.
struct LifParams {
  double c = 4.0;
  double lambda = 0.25;
  double v_th = 0.5;
  double alpha = 0.5;  // surrogate half-width
  bool reset = true;

  void Validate() const;
  static LifParams FromConstants(const NeuronConstants& n);
  // Output-layer accumulator: c = 1, lambda = 0, no reset, never spikes.
  static LifParams Accumulator();
};

struct LifTrace {
  std::vector<double> v_m;
  std::vector<double> v_sp;
  std::vector<double> d;
};

LifTrace LifForward(std::span<const double> i_in, const LifParams& p);

// d v_sp / d v_m replaced by 1/(2 alpha) inside |v_m - v_th| <= alpha.
double SurrogateGrad(double v_m, const LifParams& p);

// Time-reversed first-order recurrence mirroring the forward filter:
//   g_vm[n]  = g_vsp[n] phi'(v_m[n]) + g_vm[n+1] (1 - v_sp[n]) (c - lambda)/(c + lambda)
//   g_iin[n] = (g_vm[n] + (1 - v_sp[n]) g_vm[n+1]) / (c + lambda),   g_vm[T] = 0
std::vector<double> LifBackward(std::span<const double> g_vsp, std::span<const double> v_sp,
                                std::span<const double> v_m, const LifParams& p);

// Strided kernels used by the layer code; element n lives at ptr[n * stride].
void LifForwardStrided(const double* i_in, double* v_m, double* v_sp, double* d, int steps,
                       std::ptrdiff_t stride, const LifParams& p);
void LifBackwardStrided(const double* g_vsp, const double* v_sp, const double* v_m, double* g_iin,
                        int steps, std::ptrdiff_t stride, const LifParams& p);

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_LIF_HPP_
