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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "snnpipe/errors.hpp"
#include "snnpipe/snn/lif.hpp"

namespace snnpipe::snn {
namespace {

TEST(LossTest, UniformLogitsGiveLogN) {
  for (int n : {2, 3, 10}) {
    std::vector<double> y(n, 0.0);
    y[n - 1] = 1;
    const auto r = OutputLayerGrad(std::vector<double>(n, 0.37), y, 4);
    EXPECT_NEAR(r.loss, std::log(n), 1e-14);
  }
}

TEST(LossTest, ZeroLogitsTwoClasses) {
  const auto r = OutputLayerGrad(std::vector<double>{0, 0}, std::vector<double>{1, 0}, 3);
  EXPECT_DOUBLE_EQ(r.g_vm[0], -0.5);
  EXPECT_DOUBLE_EQ(r.g_vm[1], 0.5);
  const std::vector<double> expect{-1.0, 1.0, -1.0, 1.0, -0.5, 0.5};
  EXPECT_EQ(r.g_iin, expect);
}

TEST(LossTest, GradientRowsSumToZero) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0, 3);
  std::vector<double> v(6);
  for (double& x : v) x = g(rng);
  std::vector<double> y(6, 0.0);
  y[2] = 1;
  const auto r = OutputLayerGrad(v, y, 5);
  EXPECT_NEAR(std::accumulate(r.g_vm.begin(), r.g_vm.end(), 0.0), 0.0, 1e-15);
  for (int t = 0; t < 5; ++t) {
    EXPECT_NEAR(std::accumulate(r.g_iin.begin() + t * 6, r.g_iin.begin() + (t + 1) * 6, 0.0), 0.0, 1e-14);
  }
}

TEST(LossTest, ConfidentPredictionLimit) {
  double prev = 1e9;
  for (double gap : {1.0, 10.0, 100.0, 800.0}) {
    const auto r = OutputLayerGrad(std::vector<double>{gap, 0.0}, std::vector<double>{1, 0}, 1);
    EXPECT_TRUE(std::isfinite(r.loss));
    EXPECT_LE(r.loss, prev);
    EXPECT_GE(r.loss, 0.0);
    prev = r.loss;
  }
  EXPECT_LT(prev, 1e-12);
}

TEST(LossTest, SoftmaxIsStableForLargeLogits) {
  const auto p = Softmax(std::vector<double>{1000.0, 1000.0});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
}

// Central differences through the accumulator neuron and the cross-entropy.
TEST(LossTest, CurrentAdjointMatchesAccumulatorDifferences) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0, 1);
  const int t = 5, n = 3;
  std::vector<double> cur(t * n);
  for (double& x : cur) x = g(rng);
  const std::vector<double> y{0, 1, 0};
  auto loss = [&](const std::vector<double>& c) {
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) {
      std::vector<double> seq(t);
      for (int k = 0; k < t; ++k) seq[k] = c[k * n + j];
      v[j] = LifForward(seq, LifParams::Accumulator()).v_m.back();
    }
    return OutputLayerGrad(v, y, t);
  };
  const auto r = loss(cur);
  const double h = 1e-6;
  for (std::size_t k = 0; k < cur.size(); ++k) {
    auto up = cur, dn = cur;
    up[k] += h;
    dn[k] -= h;
    EXPECT_NEAR(r.g_iin[k], (loss(up).loss - loss(dn).loss) / (2 * h), 1e-7);
  }
}

TEST(LossSpecTest, ValidatesTargets) {
  EXPECT_NO_THROW((LossSpec{3, {{0, 1, 0}}}.Validate()));
  EXPECT_THROW((LossSpec{3, {{0, 1}}}.Validate()), StructuralError);
  EXPECT_THROW((LossSpec{3, {{0.5, 0.5, 0}}}.Validate()), StructuralError);
  EXPECT_THROW((LossSpec{2, {{1, 1}}}.Validate()), StructuralError);
  const std::vector<int> labels{1, 0};
  const auto s = LossSpec::FromLabels(labels, 2);
  EXPECT_EQ(s.y[0], (std::vector<double>{0, 1}));
  const std::vector<int> bad{2};
  EXPECT_THROW(LossSpec::FromLabels(bad, 2), StructuralError);
}

TEST(LossTest, WidthMismatchIsStructural) {
  EXPECT_THROW(OutputLayerGrad(std::vector<double>{0, 0, 0}, std::vector<double>{1, 0}, 2), StructuralError);
}

}  // namespace
}  // namespace snnpipe::snn
