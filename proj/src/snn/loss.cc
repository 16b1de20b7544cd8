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
#include "snnpipe/snn/loss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {

void LossSpec::Validate() const {
  if (n_classes < 1) throw StructuralError("loss needs at least one class");
  for (std::size_t s = 0; s < y.size(); ++s) {
    if (y[s].size() != static_cast<std::size_t>(n_classes)) {
      throw StructuralError("target " + std::to_string(s) + " has " + std::to_string(y[s].size()) +
                            " entries, expected " + std::to_string(n_classes));
    }
    int ones = 0;
    for (double v : y[s]) {
      if (v == 1.0) {
        ++ones;
      } else if (v != 0.0) {
        ones = -1;
        break;
      }
    }
    if (ones != 1) throw StructuralError("target " + std::to_string(s) + " is not one-hot");
  }
}

LossSpec LossSpec::FromLabels(std::span<const int> labels, int n_classes) {
  LossSpec spec{n_classes, {}};
  for (int label : labels) {
    if (label < 0 || label >= n_classes) {
      throw StructuralError("label " + std::to_string(label) + " outside [0, " + std::to_string(n_classes) + ")");
    }
    std::vector<double> row(n_classes, 0.0);
    row[label] = 1.0;
    spec.y.push_back(std::move(row));
  }
  return spec;
}

std::vector<double> Softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double mx = *std::max_element(p.begin(), p.end());
  double sum = 0;
  for (double& v : p) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

OutputGrad OutputLayerGrad(std::span<const double> v_m_final, std::span<const double> y, int timesteps) {
  if (v_m_final.size() != y.size()) {
    throw StructuralError("output layer width " + std::to_string(v_m_final.size()) + " != class count " +
                          std::to_string(y.size()));
  }
  if (timesteps < 1) throw StructuralError("output layer needs at least one timestep");
  const std::size_t n = y.size();
  OutputGrad r;
  const double mx = n ? *std::max_element(v_m_final.begin(), v_m_final.end()) : 0.0;
  double z = 0;
  for (double v : v_m_final) z += std::exp(v - mx);
  const double log_z = mx + std::log(z);
  const auto p = Softmax(v_m_final);
  r.g_vm.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    r.loss -= y[j] * (v_m_final[j] - log_z);
    r.g_vm[j] = p[j] - y[j];
  }
  r.g_iin.assign(static_cast<std::size_t>(timesteps) * n, 0.0);
  for (int t = 0; t < timesteps; ++t) {
    const double k = t == timesteps - 1 ? 1.0 : 2.0;
    for (std::size_t j = 0; j < n; ++j) r.g_iin[t * n + j] = k * r.g_vm[j];
  }
  return r;
}

}  // namespace snnpipe::snn
