// Copyright 2026 The agvplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "agv/common/rng.hpp"
#include "agv/envsim/oracle.hpp"
#include "agv/nn/kernels.hpp"
#include "agv/nn/mlp.hpp"
#include "agv/nn/model_io.hpp"
#include "agv/nn/train.hpp"
#include "agv/terrain/generator.hpp"

namespace agv::nn {
namespace {

// 5-2-1 network with unit normalizer and hand-picked weights.
MlpParams toy_params() {
  MlpParams p = MlpParams::zeros({5, 2, 1}, ModelKind::kMlp);
  p.normalizer = {1, 1, 1, 1, 1};
  p.layers[0].w = {0.5, -1, 0, 0, 0.25, 1, 1, 1, 1, 1};
  p.layers[0].b = {0.1, -2};
  p.layers[1].w = {2, -1};
  p.layers[1].b = {0.3};
  return p;
}

MlpParams random_params(Rng& rng, const std::vector<size_t>& dims, double scale) {
  MlpParams p = MlpParams::zeros(dims, ModelKind::kMlp);
  for (auto& layer : p.layers) {
    for (double& w : layer.w) w = rng.uniform(-scale, scale);
    for (double& b : layer.b) b = rng.uniform(-scale, scale);
  }
  return p;
}

Sample random_sample(Rng& rng) {
  Sample s;
  for (int i = 0; i < 3; ++i) s.features[i] = static_cast<double>(rng.uniform_int(0, 10));
  s.features[3] = rng.uniform(0.0, 40.0);
  s.features[4] = rng.uniform(10.0, 1500.0);
  s.label = static_cast<int>(rng.uniform_int(0, 1));
  return s;
}

// label = x1 > 5, with x1 continuous so the classes are separated by a gap.
std::vector<Sample> separable_set(Rng& rng, int n) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    Sample s = random_sample(rng);
    s.features[0] = rng.uniform01() < 0.5 ? rng.uniform(0.0, 4.5) : rng.uniform(5.5, 10.0);
    s.label = s.features[0] > 5.0 ? 1 : 0;
    out.push_back(s);
  }
  return out;
}

TEST(Forward, MatchesHandArithmetic) {
  // h = relu([0.5 - 0.5 + 0.375 + 0.1, 1 + 0.5 + 0.2 + 0 + 1.5 - 2]) = [0.475, 1.2]
  // z = 2 * 0.475 - 1.2 + 0.3 = 0.05
  const Features x = {1, 0.5, 0.2, 0, 1.5};
  EXPECT_NEAR(forward(toy_params(), x), 1.0 / (1.0 + std::exp(-0.05)), 1e-12);
  // The second hidden unit goes negative and is cut by the ReLU:
  // h = [0.1, 0], z = 0.2 + 0.3 = 0.5
  const Features y = {0, 0, 0, 0, 0};
  EXPECT_NEAR(forward(toy_params(), y), 1.0 / (1.0 + std::exp(-0.5)), 1e-12);
}

TEST(Forward, NormalizesAndClampsInputs) {
  MlpParams p = toy_params();
  p.normalizer = {10, 10, 10, 45, 1000};
  // x / normalizer = [0.1, 0.05, 0.02, 0, 2 (clamped from 5)]
  const Features x = {1, 0.5, 0.2, 0, 5000};
  const double h1 = std::max(0.0, 0.5 * 0.1 - 0.05 + 0.25 * 2 + 0.1);
  const double h2 = std::max(0.0, 0.1 + 0.05 + 0.02 + 0 + 2 - 2);
  EXPECT_NEAR(forward(p, x), 1.0 / (1.0 + std::exp(-(2 * h1 - h2 + 0.3))), 1e-12);
  EXPECT_THROW(forward(p, {NAN, 0, 0, 0, 0}), std::invalid_argument);
}

TEST(Forward, StrictlyInsideUnitInterval) {
  Rng rng(5);
  for (double scale : {1.0, 50.0, 1e4}) {
    for (int i = 0; i < 200; ++i) {
      const MlpParams p = random_params(rng, kMlpDims, scale);
      const double y = forward(p, random_sample(rng).features);
      EXPECT_GT(y, 0.0);
      EXPECT_LT(y, 1.0);
    }
  }
}

TEST(Bce, Values) {
  EXPECT_NEAR(bce(0.5, 0), 0.6931, 1e-4);
  EXPECT_NEAR(bce(0.9, 0), 2.3026, 1e-4);
  EXPECT_NEAR(bce(0.9, 1), -std::log(0.9), 1e-12);
  EXPECT_NEAR(bce(0.0, 1), -std::log(kBceClamp), 1e-9);
  EXPECT_NEAR(bce(1.0, 0), -std::log(kBceClamp), 1e-6);
  EXPECT_GE(bce(0.3, 1), 0.0);
}

// Central differences of the mean loss, one parameter at a time.
double max_relative_gradient_error(MlpParams params, const std::vector<Sample>& batch) {
  const Gradients g = backward(params, batch);
  const double h = 1e-5;
  double worst = 0.0;
  for (size_t l = 0; l < params.layers.size(); ++l) {
    for (int which = 0; which < 2; ++which) {
      auto& theta = which == 0 ? params.layers[l].w : params.layers[l].b;
      const auto& grad = which == 0 ? g.layers[l].w : g.layers[l].b;
      for (size_t i = 0; i < theta.size(); ++i) {
        const double keep = theta[i];
        theta[i] = keep + h;
        const double up = mean_loss(params, batch);
        theta[i] = keep - h;
        const double down = mean_loss(params, batch);
        theta[i] = keep;
        const double fd = (up - down) / (2 * h);
        const double denom = std::max({std::abs(fd), std::abs(grad[i]), 1e-6});
        worst = std::max(worst, std::abs(fd - grad[i]) / denom);
      }
    }
  }
  return worst;
}

TEST(Backward, MatchesFiniteDifferencesOnRandomNetworks) {
  Rng rng(42);
  for (int net = 0; net < 25; ++net) {
    std::vector<size_t> dims{5};
    const int hidden = static_cast<int>(rng.uniform_int(1, 3));
    for (int h = 0; h < hidden; ++h) dims.push_back(static_cast<size_t>(rng.uniform_int(2, 9)));
    dims.push_back(1);
    const MlpParams p = random_params(rng, dims, 0.8);
    std::vector<Sample> batch;
    for (int i = 0; i < 6; ++i) batch.push_back(random_sample(rng));
    EXPECT_LT(max_relative_gradient_error(p, batch), 1e-3) << "network " << net;
  }
}

TEST(Backward, FullSizeNetworkAndLogistic) {
  Rng rng(8);
  std::vector<Sample> batch;
  for (int i = 0; i < 10; ++i) batch.push_back(random_sample(rng));
  EXPECT_LT(max_relative_gradient_error(random_params(rng, kMlpDims, 0.4), batch), 1e-3);
  MlpParams logistic = random_params(rng, kLogisticDims, 1.0);
  logistic.kind = ModelKind::kLogistic;
  EXPECT_LT(max_relative_gradient_error(logistic, batch), 1e-3);
  EXPECT_THROW(backward(logistic, {}), std::invalid_argument);
}

TEST(Kernels, ScalarAndAvx2Agree) {
  const kernels::KernelTable* avx = kernels::avx2_kernels();
  if (avx == nullptr || !kernels::cpu_supports_avx2()) GTEST_SKIP() << "AVX2 unavailable";
  const kernels::KernelTable& ref = kernels::scalar_kernels();
  Rng rng(99);
  auto vec = [&](size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform(-2.0, 2.0);
    return v;
  };
  auto near = [](const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(a[i])));
    }
    return worst;
  };
  for (size_t rows : {1u, 3u, 4u, 7u, 16u, 32u, 33u}) {
    for (size_t cols : {1u, 2u, 5u, 8u, 13u, 32u}) {
      const auto w = vec(rows * cols), b = vec(rows), x = vec(cols), d = vec(rows);
      std::vector<double> y1(rows), y2(rows);
      ref.affine(w.data(), b.data(), x.data(), y1.data(), rows, cols);
      avx->affine(w.data(), b.data(), x.data(), y2.data(), rows, cols);
      EXPECT_LT(near(y1, y2), 1e-12);

      std::vector<double> o1(cols), o2(cols);
      ref.affine_transposed(w.data(), d.data(), o1.data(), rows, cols);
      avx->affine_transposed(w.data(), d.data(), o2.data(), rows, cols);
      EXPECT_LT(near(o1, o2), 1e-12);

      auto w1 = w, w2 = w;
      ref.rank1_update(w1.data(), d.data(), x.data(), -0.3, rows, cols);
      avx->rank1_update(w2.data(), d.data(), x.data(), -0.3, rows, cols);
      EXPECT_LT(near(w1, w2), 1e-12);

      auto a1 = w, a2 = w;
      const auto src = vec(w.size());
      ref.axpy(a1.data(), src.data(), 0.7, w.size());
      avx->axpy(a2.data(), src.data(), 0.7, w.size());
      EXPECT_LT(near(a1, a2), 1e-12);

      auto t1 = w, t2 = w, v1 = src, v2 = src;
      const auto grad = vec(w.size());
      ref.momentum_step(t1.data(), v1.data(), grad.data(), 0.01, 0.9, w.size());
      avx->momentum_step(t2.data(), v2.data(), grad.data(), 0.01, 0.9, w.size());
      EXPECT_LT(near(t1, t2), 1e-12);
      EXPECT_LT(near(v1, v2), 1e-12);
    }
  }
}

TEST(Kernels, BackendSwitchKeepsTrainingEquivalent) {
  if (!kernels::backend_available(kernels::Backend::kAvx2)) GTEST_SKIP() << "AVX2 unavailable";
  Rng rng(3);
  const auto train_set = separable_set(rng, 120);
  const auto val_set = separable_set(rng, 40);
  TrainConfig cfg;
  cfg.max_epochs = 15;
  cfg.seed = 4;
  const kernels::Backend before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::kScalar);
  const TrainResult a = train(train_set, val_set, cfg);
  kernels::set_backend(kernels::Backend::kAvx2);
  const TrainResult b = train(train_set, val_set, cfg);
  kernels::set_backend(before);
  ASSERT_EQ(a.history.val_loss.size(), b.history.val_loss.size());
  for (size_t i = 0; i < a.history.val_loss.size(); ++i) {
    EXPECT_NEAR(a.history.val_loss[i], b.history.val_loss[i], 1e-9);
  }
}

TEST(Train, SeparableSetMlpAndLogistic) {
  Rng rng(17);
  const auto train_set = separable_set(rng, 200);
  const auto val_set = separable_set(rng, 100);
  TrainConfig cfg;
  cfg.seed = 1;
  const TrainResult mlp = train(train_set, val_set, cfg);
  EXPECT_GE(evaluate(mlp.params, val_set), 0.98);
  EXPECT_EQ(mlp.params.dims, kMlpDims);
  const auto& h = mlp.history;
  EXPECT_EQ(h.train_loss.size(), h.val_loss.size());
  EXPECT_EQ(h.val_accuracy.size(), h.val_loss.size());
  EXPECT_EQ(static_cast<int>(h.val_loss.size()), h.stopping_epoch);
  EXPECT_LE(h.stopping_epoch, cfg.max_epochs);
  const double best = *std::min_element(h.val_loss.begin(), h.val_loss.end());
  EXPECT_LE(best, h.val_loss[0]);
  EXPECT_DOUBLE_EQ(h.val_loss[h.best_epoch], best);
  EXPECT_NEAR(mean_loss(mlp.params, val_set), best, 1e-12);

  const TrainResult logistic = train_logistic(train_set, val_set, cfg);
  EXPECT_EQ(logistic.params.dims, kLogisticDims);
  EXPECT_EQ(logistic.params.kind, ModelKind::kLogistic);
  EXPECT_GE(evaluate(logistic.params, val_set), 0.98);

  // Same seed, same result.
  const TrainResult again = train(train_set, val_set, cfg);
  EXPECT_EQ(again.params, mlp.params);
}

TEST(Train, RejectsBadInput) {
  Rng rng(1);
  auto one_class = separable_set(rng, 20);
  for (auto& s : one_class) s.label = 1;
  EXPECT_THROW(train(one_class, one_class, {}), std::invalid_argument);
  EXPECT_THROW(train({}, one_class, {}), std::invalid_argument);
  TrainConfig bad;
  bad.batch_size = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = {};
  bad.momentum = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(Evaluate, OrderInvariantAndTieRoundsUp) {
  Rng rng(23);
  const MlpParams p = random_params(rng, kMlpDims, 0.5);
  std::vector<Sample> data;
  for (int i = 0; i < 300; ++i) data.push_back(random_sample(rng));
  const double acc = evaluate(p, data);
  for (int k = 0; k < 5; ++k) {
    rng.shuffle(data);
    EXPECT_EQ(evaluate(p, data), acc);
  }
  // All-zero parameters output exactly 0.5, which counts as label 1.
  const MlpParams zero = MlpParams::zeros(kMlpDims, ModelKind::kMlp);
  Sample pos = random_sample(rng), neg = pos;
  pos.label = 1;
  neg.label = 0;
  EXPECT_EQ(forward(zero, pos.features), 0.5);
  EXPECT_EQ(evaluate(zero, std::vector<Sample>{pos}), 1.0);
  EXPECT_EQ(evaluate(zero, std::vector<Sample>{neg}), 0.0);
}

TEST(EdgePreferences, ConstantModelsAndDefinition) {
  const terrain::TerrainGraph g = terrain::generate_graph(15, 3, 2);
  const envsim::Weather w{3, 4, 5};
  MlpParams always = MlpParams::zeros(kLogisticDims, ModelKind::kLogistic);
  always.layers[0].b = {60.0};
  for (double p : edge_preferences(always, g, w)) EXPECT_NEAR(p, 0.0, 1e-12);
  always.layers[0].b = {-60.0};
  for (double p : edge_preferences(always, g, w)) EXPECT_NEAR(p, 1.0, 1e-12);

  Rng rng(6);
  const MlpParams p = random_params(rng, kMlpDims, 0.5);
  const auto prefs = edge_preferences(p, g, w);
  ASSERT_EQ(prefs.size(), static_cast<size_t>(g.edge_count()));
  const auto& e = g.edge(3);
  const Features row = {3, 4, 5, e.max_slope_deg, e.dist_m};
  EXPECT_DOUBLE_EQ(prefs[3], 1.0 - forward(p, row));
}

TEST(ModelIo, RoundTripAndErrors) {
  Rng rng(12);
  MlpParams p = random_params(rng, kMlpDims, 0.7);
  EXPECT_EQ(load_model(serialize_model(p)), p);
  MlpParams l = random_params(rng, kLogisticDims, 0.7);
  l.kind = ModelKind::kLogistic;
  EXPECT_EQ(load_model(serialize_model(l)), l);
  EXPECT_THROW(load_model("{}"), ModelError);
  EXPECT_THROW(load_model("[1,2"), ModelError);
  EXPECT_THROW(load_model(R"({"dims":[5,1],"layers":[{"w":[[1,2]],"b":[0]}],
      "normalizer":[1,1,1,1,1],"kind":"logistic"})"),
               ModelError);
}

TEST(Params, Validation) {
  MlpParams p = MlpParams::zeros(kMlpDims, ModelKind::kMlp);
  EXPECT_NO_THROW(p.validate());
  EXPECT_EQ(p.parameter_count(), 5u * 32 + 32 + 32 * 32 + 32 + 32 * 16 + 16 + 16 + 1);
  p.layers[1].w[0] = INFINITY;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = MlpParams::zeros(kMlpDims, ModelKind::kMlp);
  p.normalizer[2] = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_THROW(MlpParams::zeros({4, 1}, ModelKind::kMlp).validate(), std::invalid_argument);
}

}  // namespace
}  // namespace agv::nn
