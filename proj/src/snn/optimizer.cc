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
#include "snnpipe/snn/optimizer.hpp"

#include <cmath>

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {

OptimizerKind ParseOptimizer(const std::string& s) {
  if (s == "sgd") return OptimizerKind::kSgd;
  if (s == "adam") return OptimizerKind::kAdam;
  throw ParseError("unknown optimizer '" + s + "' (expected sgd or adam)");
}

const char* OptimizerName(OptimizerKind k) { return k == OptimizerKind::kSgd ? "sgd" : "adam"; }

void OptimizerConfig::Validate() const {
  if (!(eta > 0) || !std::isfinite(eta)) throw NumericDomainError("learning rate must be finite and > 0");
  if (kind == OptimizerKind::kAdam) {
    if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1)) {
      throw NumericDomainError("adam decay rates must lie in [0, 1)");
    }
    if (!(epsilon > 0)) throw NumericDomainError("adam epsilon must be > 0");
  }
}

UpdateRule::UpdateRule(const OptimizerConfig& cfg, std::size_t size) : cfg_(cfg) {
  cfg_.Validate();
  if (cfg_.kind == OptimizerKind::kAdam) {
    m_.assign(size, 0.0);
    v_.assign(size, 0.0);
  }
}

void UpdateRule::Apply(std::span<double> w, std::span<const double> g) {
  if (w.size() != g.size()) throw StructuralError("optimizer: gradient size does not match weights");
  for (double x : g) {
    if (!std::isfinite(x)) throw NumericDomainError("optimizer: non-finite gradient");
  }
  if (cfg_.kind == OptimizerKind::kSgd) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg_.eta * g[i];
  } else {
    if (m_.size() != w.size()) throw StructuralError("optimizer: moment size does not match weights");
    const double t1 = static_cast<double>(step_ + 1);
    const double eta_t = cfg_.eta * std::sqrt(1.0 - std::pow(cfg_.beta2, t1)) / (1.0 - std::pow(cfg_.beta1, t1));
    for (std::size_t i = 0; i < w.size(); ++i) {
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * g[i];
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * g[i] * g[i];
      w[i] -= eta_t * m_[i] / (std::sqrt(v_[i]) + cfg_.epsilon);
    }
  }
  ++step_;
}

DelayedOptimizer::DelayedOptimizer(const OptimizerConfig& cfg, std::size_t size, int delay)
    : rule_(cfg, size), delay_(delay), size_(size) {
  if (delay < 0) throw NumericDomainError("gradient delay must be >= 0");
}

bool DelayedOptimizer::Step(std::span<double> w, std::span<const double> g) {
  if (g.size() != size_) throw StructuralError("optimizer: gradient size does not match weights");
  queue_.emplace_back(g.begin(), g.end());
  if (queue_.size() <= static_cast<std::size_t>(delay_)) return false;
  rule_.Apply(w, queue_.front());
  queue_.pop_front();
  return true;
}

}  // namespace snnpipe::snn
