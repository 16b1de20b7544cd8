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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "snnpipe/errors.hpp"

namespace snnpipe::snn {
namespace {

OptimizerConfig Sgd(double eta) {
  OptimizerConfig c;
  c.kind = OptimizerKind::kSgd;
  c.eta = eta;
  return c;
}

TEST(OptimizerTest, SgdStep) {
  UpdateRule r(Sgd(0.1), 1);
  std::vector<double> w{1.0};
  r.Apply(w, std::vector<double>{2.0});
  EXPECT_DOUBLE_EQ(w[0], 0.8);
}

TEST(OptimizerTest, AdamFirstStepClosedForm) {
  OptimizerConfig c;  // adam, 1e-3
  for (double g : {2.0, -0.3, 1e-4}) {
    UpdateRule r(c, 1);
    std::vector<double> w{0.5};
    r.Apply(w, std::vector<double>{g});
    const double expect = 0.5 - c.eta * g / (std::abs(g) + c.epsilon / std::sqrt(1 - c.beta2));
    EXPECT_NEAR(w[0], expect, 1e-15);
    if (std::abs(g) > 0.1) EXPECT_NEAR(w[0], 0.5 - c.eta * (g > 0 ? 1 : -1), 1e-7);
  }
}

// Bias-corrected moments, with epsilon applied to the uncorrected second moment.
TEST(OptimizerTest, AdamMatchesTextbookRecurrence) {
  OptimizerConfig c;
  c.eta = 0.01;
  UpdateRule r(c, 1);
  std::vector<double> w{0.0};
  double ref = 0, m = 0, v = 0;
  const double grads[] = {0.5, -1.0, 0.25, 2.0, -0.1};
  for (int t = 1; t <= 5; ++t) {
    const double g = grads[t - 1];
    r.Apply(w, std::vector<double>{g});
    m = c.beta1 * m + (1 - c.beta1) * g;
    v = c.beta2 * v + (1 - c.beta2) * g * g;
    const double mh = m / (1 - std::pow(c.beta1, t));
    const double vh = v / (1 - std::pow(c.beta2, t));
    ref -= c.eta * mh / (std::sqrt(vh) + c.epsilon / std::sqrt(1 - std::pow(c.beta2, t)));
    EXPECT_NEAR(w[0], ref, 1e-6 * c.eta);
  }
  EXPECT_EQ(r.step(), 5);
}

// With sgd(eta = 1) and gradients 1, 10, 100, ... the weight records which
// gradients have been applied.
TEST(OptimizerTest, DelayQueueAppliesGradientFromDBatchesAgo) {
  for (int d = 0; d <= 3; ++d) {
    DelayedOptimizer opt(Sgd(1.0), 1, d);
    std::vector<double> w{0.0};
    double applied = 0;
    for (int k = 0; k < 7; ++k) {
      const double g = std::pow(10.0, k);
      const bool stepped = opt.Step(w, std::vector<double>{g});
      EXPECT_EQ(stepped, k >= d) << "delay " << d << " step " << k;
      if (k >= d) applied += std::pow(10.0, k - d);
      EXPECT_EQ(w[0], -applied);
      EXPECT_EQ(opt.pending(), static_cast<std::size_t>(std::min(k + 1, d)));
    }
    EXPECT_EQ(opt.updates(), 7 - d);
  }
}

TEST(OptimizerTest, RejectsBadInput) {
  OptimizerConfig c;
  c.eta = 0;
  EXPECT_THROW(c.Validate(), NumericDomainError);
  c = OptimizerConfig{};
  c.beta1 = 1.0;
  EXPECT_THROW(c.Validate(), NumericDomainError);
  UpdateRule r(OptimizerConfig{}, 2);
  std::vector<double> w{0, 0};
  EXPECT_THROW(r.Apply(w, std::vector<double>{1.0}), StructuralError);
  EXPECT_THROW(r.Apply(w, std::vector<double>{1.0, std::nan("")}), NumericDomainError);
  EXPECT_THROW(DelayedOptimizer(OptimizerConfig{}, 1, -2), NumericDomainError);
  EXPECT_THROW(ParseOptimizer("rmsprop"), ParseError);
  EXPECT_EQ(ParseOptimizer("sgd"), OptimizerKind::kSgd);
  EXPECT_STREQ(OptimizerName(OptimizerKind::kAdam), "adam");
}

}  // namespace
}  // namespace snnpipe::snn
