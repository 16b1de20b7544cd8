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
#include "snnpipe/snn/train.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "snnpipe/errors.hpp"
#include "snnpipe/snn/model.hpp"

namespace snnpipe::snn {

namespace {

using UpdateFn = std::function<void(SnnModel&, const BatchGrads&)>;

void CheckInputs(const NetworkSpec& net, const Dataset& data, const TrainConfig& cfg) {
  if (data.size() == 0) throw StructuralError("training set is empty");
  data.Validate();
  if (data.features != net.input.size()) {
    throw StructuralError("dataset has " + std::to_string(data.features) + " features, network expects " +
                          std::to_string(net.input.size()));
  }
  if (data.n_classes != net.layers.back().out.size()) {
    throw StructuralError("dataset has " + std::to_string(data.n_classes) + " classes, output layer has " +
                          std::to_string(net.layers.back().out.size()));
  }
  if (cfg.epochs < 1 || cfg.batch < 1) throw StructuralError("epochs and batch must be >= 1");
  cfg.optimizer.Validate();
}

double Evaluate(const SnnModel& model, const Dataset& data, int batch) {
  int correct = 0;
  std::vector<std::size_t> idx;
  for (std::size_t start = 0; start < data.size(); start += batch) {
    idx.clear();
    for (std::size_t i = start; i < std::min(data.size(), start + batch); ++i) idx.push_back(i);
    const auto fwd = model.Forward(data.Batch(idx));
    const auto pred = SnnModel::Predict(fwd);
    for (std::size_t b = 0; b < idx.size(); ++b) correct += pred[b] == data.labels[idx[b]];
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

TrainHistory Loop(const NetworkSpec& net, const Dataset& data, const TrainConfig& cfg, SnnModel& model,
                  const UpdateFn& update) {
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  TrainHistory h;
  for (int e = 0; e < cfg.epochs; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss = 0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
      const std::size_t end = std::min(order.size(), start + cfg.batch);
      std::vector<std::size_t> idx(order.begin() + start, order.begin() + end);
      std::vector<int> labels;
      for (std::size_t i : idx) labels.push_back(data.labels[i]);
      try {
        const auto fwd = model.Forward(data.Batch(idx));
        const BatchGrads g = model.Backward(fwd, labels);
        loss += g.loss / static_cast<double>(idx.size());
        update(model, g);
      } catch (const NumericDomainError& err) {
        throw NumericDomainError("non-finite value in epoch " + std::to_string(e + 1) + ", batch " +
                                 std::to_string(batches + 1) + " of network " + net.name + ": " + err.what());
      }
      ++batches;
    }
    h.epochs.push_back(EpochRecord{e + 1, loss / batches, Evaluate(model, data, cfg.batch)});
  }
  return h;
}

}  // namespace

TrainHistory Train(const NetworkSpec& net, const Dataset& data, const TrainConfig& cfg) {
  CheckInputs(net, data, cfg);
  SnnModel model(net, cfg.seed);
  const auto& params = model.param_layers();
  std::vector<int> delays = cfg.delays;
  if (delays.empty()) delays.assign(params.size(), 0);
  if (delays.size() != params.size()) {
    throw StructuralError("got " + std::to_string(delays.size()) + " delays for " + std::to_string(params.size()) +
                          " parameterised layers");
  }
  for (int d : delays) {
    if (d < 0 || d % 2 != 0) throw StructuralError("delays must be even and >= 0, got " + std::to_string(d));
  }
  std::vector<DelayedOptimizer> w_opt, b_opt;
  for (std::size_t s = 0; s < params.size(); ++s) {
    const auto& m = model.layers()[params[s]];
    w_opt.emplace_back(cfg.optimizer, m.weights.w.size(), delays[s]);
    b_opt.emplace_back(cfg.optimizer, m.weights.bias.size(), delays[s]);
  }
  return Loop(net, data, cfg, model, [&](SnnModel& mdl, const BatchGrads& g) {
    for (std::size_t s = 0; s < params.size(); ++s) {
      auto& wts = mdl.layers()[params[s]].weights;
      w_opt[s].Step(wts.w, g.layers[s].g_w);
      b_opt[s].Step(wts.bias, g.layers[s].g_bias);
    }
  });
}

TrainHistory TrainUndelayed(const NetworkSpec& net, const Dataset& data, const TrainConfig& cfg) {
  CheckInputs(net, data, cfg);
  SnnModel model(net, cfg.seed);
  const auto& params = model.param_layers();
  std::vector<UpdateRule> w_rule, b_rule;
  for (int li : params) {
    const auto& m = model.layers()[li];
    w_rule.emplace_back(cfg.optimizer, m.weights.w.size());
    b_rule.emplace_back(cfg.optimizer, m.weights.bias.size());
  }
  return Loop(net, data, cfg, model, [&](SnnModel& mdl, const BatchGrads& g) {
    for (std::size_t s = 0; s < params.size(); ++s) {
      auto& wts = mdl.layers()[params[s]].weights;
      w_rule[s].Apply(wts.w, g.layers[s].g_w);
      b_rule[s].Apply(wts.bias, g.layers[s].g_bias);
    }
  });
}

void WriteHistoryCsv(std::ostream& out, const TrainHistory& h) {
  out << "epoch,loss,accuracy\r\n";
  char buf[96];
  for (const auto& r : h.epochs) {
    std::snprintf(buf, sizeof buf, "%d,%.9g,%.6f\r\n", r.epoch, r.loss, r.accuracy);
    out << buf;
  }
}

}  // namespace snnpipe::snn
