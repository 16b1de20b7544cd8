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
#ifndef SNNPIPE_SNN_OPTIMIZER_HPP_
#define SNNPIPE_SNN_OPTIMIZER_HPP_

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

namespace snnpipe::snn {

enum class OptimizerKind { kSgd, kAdam };

OptimizerKind ParseOptimizer(const std::string& s);
const char* OptimizerName(OptimizerKind k);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double eta = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void Validate() const;
};

// Update rule for one parameter tensor. Stateless apart from the moments.
class UpdateRule {
 public:
  UpdateRule(const OptimizerConfig& cfg, std::size_t size);
  // w <- w - eta g                                           (sgd)
  // m <- b1 m + (1-b1) g, v <- b2 v + (1-b2) g^2,
  // w <- w - eta sqrt(1-b2^(t+1))/(1-b1^(t+1)) m/(sqrt(v)+eps)  (adam)
  void Apply(std::span<double> w, std::span<const double> g);
  int64_t step() const { return step_; }

 private:
  OptimizerConfig cfg_;
  std::vector<double> m_;
  std::vector<double> v_;
  int64_t step_ = 0;
};

// Update rule behind a FIFO of `delay` pending gradients. The freshly
// computed gradient is pushed and, once the queue is full, the oldest one is
// applied, so a gradient from batch t lands at batch t + delay.
class DelayedOptimizer {
 public:
  DelayedOptimizer(const OptimizerConfig& cfg, std::size_t size, int delay);
  // Returns true when an update was applied.
  bool Step(std::span<double> w, std::span<const double> g);
  int delay() const { return delay_; }
  std::size_t pending() const { return queue_.size(); }
  int64_t updates() const { return rule_.step(); }

 private:
  UpdateRule rule_;
  int delay_;
  std::size_t size_;
  std::deque<std::vector<double>> queue_;
};

}  // namespace snnpipe::snn

#endif  // SNNPIPE_SNN_OPTIMIZER_HPP_
