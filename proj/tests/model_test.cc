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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "snnpipe/errors.hpp"
#include "snnpipe/network.hpp"

namespace snnpipe::snn {
namespace {

constexpr char kSmallNet[] = R"(name small
timesteps 4
batch 2
input 4x4x1
neuron c=4 lambda=0.25 vth=0.5 alpha=0.5
layer conv1 conv in=4x4x1 k=3 pad=1 out=4x4x2
layer pool1 maxpool in=4x4x2 window=2 out=2x2x2
layer fc1 fc in=8 out=6
layer out output in=6 out=3
)";

// Per-neuron sequences of a (T, B, N) tensor.
std::vector<double> Lane(const SeqTensor& s, int b, int n) {
  std::vector<double> v(s.t);
  for (int t = 0; t < s.t; ++t) v[t] = s.at(t, b, n);
  return v;
}

struct RefPool {
  SeqTensor out;
  std::vector<int> src;  // pooled index -> input index of the first maximum, per (t, b)
};

RefPool Pool(const SeqTensor& x, const Shape3& in, int win) {
  const int ho = in.h / win, wo = in.w / win;
  RefPool r{SeqTensor(x.t, x.b, ho * wo * in.c), {}};
  r.src.assign(r.out.data.size(), 0);
  for (int t = 0; t < x.t; ++t) {
    for (int b = 0; b < x.b; ++b) {
      for (int c = 0; c < in.c; ++c) {
        for (int y = 0; y < ho; ++y) {
          for (int xx = 0; xx < wo; ++xx) {
            int best = -1;
            for (int dy = 0; dy < win; ++dy) {
              for (int dx = 0; dx < win; ++dx) {
                const int idx = (c * in.h + y * win + dy) * in.w + xx * win + dx;
                if (best < 0 || x.at(t, b, idx) > x.at(t, b, best)) best = idx;
              }
            }
            const int o = (c * ho + y) * wo + xx;
            r.out.at(t, b, o) = x.at(t, b, best);
            r.src[r.out.Index(t, b, o)] = best;
          }
        }
      }
    }
  }
  return r;
}

TEST(ModelTest, BatchGradientsMatchComposedOracle) {
  const NetworkSpec net = ParseNetworkString(kSmallNet);
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(-1.5, 1.5), coin(0, 1);
  for (int trial = 0; trial < 5; ++trial) {
    SnnModel model(net, 1);
    for (auto& l : model.layers()) {
      for (double& w : l.weights.w) w = u(rng);
      for (double& b : l.weights.bias) b = 0.2 * u(rng);
    }
    SeqTensor input(4, 2, 16);
    for (double& x : input.data) x = coin(rng) < 0.4 ? 1.0 : 0.0;
    const std::vector<int> labels{trial % 3, (trial + 1) % 3};

    const auto fwd = model.Forward(input);
    const auto got = model.Backward(fwd, labels);

    // Independent forward.
    const auto& L = model.layers();
    const LifParams hid = LifParams::FromConstants(net.neuron);
    auto lif_layer = [&](const SeqTensor& cur, const LifParams& p) {
      SeqTensor v(cur.t, cur.b, cur.n), s = v;
      for (int b = 0; b < cur.b; ++b) {
        for (int n = 0; n < cur.n; ++n) {
          const auto tr = oracle::DfiForward(Lane(cur, b, n), p);
          for (int t = 0; t < cur.t; ++t) {
            v.at(t, b, n) = tr.v[t];
            s.at(t, b, n) = tr.s[t];
          }
        }
      }
      return std::pair{v, s};
    };
    const auto i1 = oracle::ReferenceSynapse(input, *L[0].geom, L[0].weights.w, L[0].weights.bias);
    const auto [v1, s1] = lif_layer(i1, hid);
    const auto pool = Pool(s1, L[1].spec.in, 2);
    const auto i3 = oracle::ReferenceSynapse(pool.out, *L[2].geom, L[2].weights.w, L[2].weights.bias);
    const auto [v3, s3] = lif_layer(i3, hid);
    const auto i4 = oracle::ReferenceSynapse(s3, *L[3].geom, L[3].weights.w, L[3].weights.bias);
    const auto [v4, s4] = lif_layer(i4, LifParams::Accumulator());

    // Cross-entropy on the last potentials.
    SeqTensor g4(4, 2, 3);
    double loss = 0;
    for (int b = 0; b < 2; ++b) {
      double z = 0;
      for (int j = 0; j < 3; ++j) z += std::exp(v4.at(3, b, j));
      loss += std::log(z) - v4.at(3, b, labels[b]);
      for (int j = 0; j < 3; ++j) {
        const double dv = std::exp(v4.at(3, b, j)) / z - (j == labels[b] ? 1.0 : 0.0);
        // v[T-1] = sum_t (2 - [t = T-1]) i[t] for the accumulator.
        for (int t = 0; t < 4; ++t) g4.at(t, b, j) = (t == 3 ? 1.0 : 2.0) * dv;
      }
    }
    EXPECT_NEAR(got.loss, loss, 1e-12);

    auto lif_back = [&](const SeqTensor& g_act, const SeqTensor& cur, const LifParams& p) {
      SeqTensor g(cur.t, cur.b, cur.n);
      for (int b = 0; b < cur.b; ++b) {
        for (int n = 0; n < cur.n; ++n) {
          const auto gi = oracle::LifGradOracle(Lane(cur, b, n), Lane(g_act, b, n), p);
          for (int t = 0; t < cur.t; ++t) g.at(t, b, n) = gi[t];
        }
      }
      return g;
    };
    const auto w4 = oracle::WeightGradByPerturbation(g4, s3, *L[3].geom, L[3].weights.w);
    SeqTensor ga3(4, 2, 6);
    ga3.data = w4.g_prev;
    const auto g3 = lif_back(ga3, i3, hid);
    const auto w3 = oracle::WeightGradByPerturbation(g3, pool.out, *L[2].geom, L[2].weights.w);
    SeqTensor ga1(4, 2, 32);
    for (std::size_t k = 0; k < w3.g_prev.size(); ++k) {
      const int t = static_cast<int>(k / 16), b = static_cast<int>(k / 8 % 2);
      ga1.at(t, b, pool.src[k]) += w3.g_prev[k];
    }
    const auto g1 = lif_back(ga1, i1, hid);
    const auto w1 = oracle::WeightGradByPerturbation(g1, input, *L[0].geom, L[0].weights.w);

    const oracle::WeightGradOracle* ref[] = {&w1, &w3, &w4};
    ASSERT_EQ(got.layers.size(), 3u);
    for (int k = 0; k < 3; ++k) {
      EXPECT_LE(oracle::NormwiseRelError(got.layers[k].g_w, ref[k]->g_w), 1e-12) << "layer " << k;
      EXPECT_LE(oracle::NormwiseRelError(got.layers[k].g_bias, ref[k]->g_bias), 1e-12) << "layer " << k;
    }
    double conv_norm = 0;
    for (double x : w1.g_w) conv_norm += std::abs(x);
    EXPECT_GT(conv_norm, 0.0);
  }
}

TEST(ModelTest, GlorotRangeAndZeroBias) {
  const NetworkSpec net = ParseNetworkString(kSmallNet);
  SnnModel m(net, 7);
  const double lim_fc = std::sqrt(6.0 / (8 + 6));
  for (double w : m.layers()[2].weights.w) EXPECT_LE(std::abs(w), lim_fc);
  for (double b : m.layers()[2].weights.bias) EXPECT_EQ(b, 0.0);
  EXPECT_EQ(m.param_layers(), (std::vector<int>{0, 2, 3}));
  EXPECT_EQ(m.num_classes(), 3);
  SnnModel again(net, 7);
  EXPECT_EQ(again.layers()[0].weights.w, m.layers()[0].weights.w);
}

TEST(ModelTest, PredictTakesFirstMaximum) {
  ForwardState f;
  f.logits = {{0.1, 0.9, 0.9}, {2.0, -1.0, 0.0}};
  EXPECT_EQ(SnnModel::Predict(f), (std::vector<int>{1, 0}));
}

TEST(ModelTest, RejectsWrongInputAndLabels) {
  SnnModel m(ParseNetworkString(kSmallNet), 1);
  EXPECT_THROW(m.Forward(SeqTensor(4, 1, 15)), StructuralError);
  const auto f = m.Forward(SeqTensor(4, 2, 16));
  const std::vector<int> one{0};
  EXPECT_THROW(m.Backward(f, one), StructuralError);
  const std::vector<int> bad{0, 3};
  EXPECT_THROW(m.Backward(f, bad), StructuralError);
}

}  // namespace
}  // namespace snnpipe::snn
