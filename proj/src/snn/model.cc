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
#include "snnpipe/snn/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "snnpipe/errors.hpp"
#include "snnpipe/snn/loss.hpp"
#include "snnpipe/snn/maxpool.hpp"

namespace snnpipe::snn {

SnnModel::SnnModel(const NetworkSpec& net, uint64_t seed) : net_(net) {
  net_.Validate();
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < net_.layers.size(); ++i) {
    const LayerSpec& l = net_.layers[i];
    ModelLayer m;
    m.spec = l;
    m.lif = l.kind == LayerKind::kOutput ? LifParams::Accumulator() : LifParams::FromConstants(net_.neuron);
    if (l.kind != LayerKind::kMaxPool) {
      m.geom = SynapseGeometry::FromLayer(l);
      const auto& g = *m.geom;
      const double k2 = static_cast<double>(g.kernel) * g.kernel;
      const double limit = std::sqrt(6.0 / (k2 * g.in.c + k2 * g.out.c));
      std::uniform_real_distribution<double> u(-limit, limit);
      m.weights.w.resize(g.weight_count());
      for (double& w : m.weights.w) w = u(rng);
      m.weights.bias.assign(g.out.c, 0.0);
      param_layers_.push_back(static_cast<int>(i));
    }
    layers_.push_back(std::move(m));
  }
}

int SnnModel::num_classes() const { return static_cast<int>(net_.layers.back().out.size()); }

ForwardState SnnModel::Forward(const SeqTensor& input) const {
  if (input.n != net_.input.size()) {
    throw StructuralError("input width " + std::to_string(input.n) + " != network input " +
                          std::to_string(net_.input.size()));
  }
  if (input.t < 1 || input.b < 1) throw StructuralError("input needs at least one timestep and one sample");
  ForwardState f;
  f.acts.push_back(input);
  for (const ModelLayer& m : layers_) {
    const SeqTensor& x = f.acts.back();
    if (m.spec.kind == LayerKind::kMaxPool) {
      f.state.emplace_back();
      f.acts.push_back(MaxPoolForward(x, m.spec.in, m.spec.window));
      continue;
    }
    LayerTensors s;
    s.i_in = SynapticForward(x, *m.geom, m.weights);
    s.v_m = SeqTensor(s.i_in.t, s.i_in.b, s.i_in.n);
    s.v_sp = s.v_m;
    s.d = s.v_m;
    const auto stride = s.i_in.time_stride();
    for (int b = 0; b < s.i_in.b; ++b) {
      for (int n = 0; n < s.i_in.n; ++n) {
        const std::size_t o = s.i_in.Index(0, b, n);
        LifForwardStrided(s.i_in.data.data() + o, s.v_m.data.data() + o, s.v_sp.data.data() + o,
                          s.d.data.data() + o, s.i_in.t, stride, m.lif);
      }
    }
    f.acts.push_back(s.v_sp);
    f.state.push_back(std::move(s));
  }
  const LayerTensors& out = f.state.back();
  for (int b = 0; b < out.v_m.b; ++b) {
    auto fr = out.v_m.frame(out.v_m.t - 1, b);
    f.logits.emplace_back(fr.begin(), fr.end());
  }
  return f;
}

BatchGrads SnnModel::Backward(const ForwardState& fwd, std::span<const int> labels) const {
  const int batch = static_cast<int>(fwd.logits.size());
  if (static_cast<int>(labels.size()) != batch) {
    throw StructuralError("label count " + std::to_string(labels.size()) + " != batch " + std::to_string(batch));
  }
  const LossSpec loss = LossSpec::FromLabels(labels, num_classes());
  const SeqTensor& last = fwd.state.back().i_in;
  BatchGrads r;
  r.layers.resize(param_layers_.size());

  // Adjoint of the current layer's input current.
  SeqTensor g_iin(last.t, last.b, last.n);
  const auto preds = Predict(fwd);
  for (int b = 0; b < batch; ++b) {
    const OutputGrad og = OutputLayerGrad(fwd.logits[b], loss.y[b], last.t);
    r.loss += og.loss;
    if (preds[b] == labels[b]) ++r.correct;
    for (int t = 0; t < last.t; ++t) {
      for (int j = 0; j < last.n; ++j) g_iin.at(t, b, j) = og.g_iin[static_cast<std::size_t>(t) * last.n + j];
    }
  }
  if (!std::isfinite(r.loss)) throw NumericDomainError("loss is not finite");

  int slot = static_cast<int>(param_layers_.size()) - 1;
  SeqTensor g_act;  // adjoint of layer i's output activation
  for (int i = static_cast<int>(layers_.size()) - 1; i >= 0; --i) {
    const ModelLayer& m = layers_[i];
    if (m.spec.kind == LayerKind::kMaxPool) {
      g_act = MaxPoolBackward(g_act, fwd.acts[i], m.spec.in, m.spec.window);
      continue;
    }
    if (m.spec.kind != LayerKind::kOutput) {
      const LayerTensors& s = fwd.state[i];
      g_iin = SeqTensor(s.v_m.t, s.v_m.b, s.v_m.n);
      const auto stride = s.v_m.time_stride();
      for (int b = 0; b < s.v_m.b; ++b) {
        for (int n = 0; n < s.v_m.n; ++n) {
          const std::size_t o = s.v_m.Index(0, b, n);
          LifBackwardStrided(g_act.data.data() + o, s.v_sp.data.data() + o, s.v_m.data.data() + o,
                             g_iin.data.data() + o, s.v_m.t, stride, m.lif);
        }
      }
    }
    SynapseGrads sg = BackwardThroughWeights(g_iin, fwd.acts[i], *m.geom, m.weights);
    r.layers[slot--] = ParamGrads{std::move(sg.g_w), std::move(sg.g_bias)};
    g_act = std::move(sg.g_prev);
  }
  return r;
}

std::vector<int> SnnModel::Predict(const ForwardState& fwd) {
  std::vector<int> out;
  for (const auto& row : fwd.logits) {
    int best = 0;
    for (int j = 1; j < static_cast<int>(row.size()); ++j) {
      if (row[j] > row[best]) best = j;
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace snnpipe::snn
