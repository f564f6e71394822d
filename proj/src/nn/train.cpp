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

#include "agv/nn/train.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "agv/common/rng.hpp"
#include "agv/nn/kernels.hpp"
#include "src/nn/workspace.hpp"

namespace agv::nn {

void TrainConfig::validate() const {
  if (!(learning_rate >= 0.0 && std::isfinite(learning_rate))) {
    throw std::invalid_argument("learning_rate must be >= 0");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) throw std::invalid_argument("momentum must be in [0, 1)");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (patience < 0) throw std::invalid_argument("patience must be >= 0");
}

TrainResult train_network(const std::vector<size_t>& dims, ModelKind kind,
                          std::span<const Sample> train, std::span<const Sample> val,
                          const TrainConfig& cfg) {
  cfg.validate();
  if (train.empty() || val.empty()) throw std::invalid_argument("train and val must be nonempty");
  size_t positives = 0;
  for (const Sample& s : train) positives += s.label == 1 ? 1 : 0;
  if (positives == 0 || positives == train.size()) {
    throw std::invalid_argument("training set contains a single class");
  }

  MlpParams params = MlpParams::zeros(dims, kind);
  if (cfg.init == InitScheme::kHeUniform) {
    Rng rng(derive_seed(cfg.seed, {0x1417}));
    for (DenseLayer& layer : params.layers) {
      const double limit = std::sqrt(6.0 / static_cast<double>(layer.in));
      for (double& w : layer.w) w = rng.uniform(-limit, limit);
    }
  }

  Gradients velocity = Gradients::zeros_like(params);
  Gradients grad = Gradients::zeros_like(params);
  detail::Workspace ws(params);
  const auto& k = kernels::active();

  TrainResult result{params, {}};
  double best_val = std::numeric_limits<double>::infinity();
  int stale = 0;
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), size_t{0});

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    Rng shuffler(derive_seed(cfg.seed, {0xE90C, static_cast<uint64_t>(epoch)}));
    std::iota(order.begin(), order.end(), size_t{0});
    shuffler.shuffle(order);

    for (size_t begin = 0; begin < order.size(); begin += static_cast<size_t>(cfg.batch_size)) {
      const size_t end = std::min(order.size(), begin + static_cast<size_t>(cfg.batch_size));
      for (DenseLayer& g : grad.layers) {
        std::fill(g.w.begin(), g.w.end(), 0.0);
        std::fill(g.b.begin(), g.b.end(), 0.0);
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      for (size_t i = begin; i < end; ++i) ws.accumulate(params, train[order[i]], scale, grad);
      for (size_t l = 0; l < params.layers.size(); ++l) {
        DenseLayer& layer = params.layers[l];
        k.momentum_step(layer.w.data(), velocity.layers[l].w.data(), grad.layers[l].w.data(),
                        cfg.learning_rate, cfg.momentum, layer.w.size());
        k.momentum_step(layer.b.data(), velocity.layers[l].b.data(), grad.layers[l].b.data(),
                        cfg.learning_rate, cfg.momentum, layer.b.size());
      }
    }

    const double val_loss = mean_loss(params, val);
    result.history.train_loss.push_back(mean_loss(params, train));
    result.history.val_loss.push_back(val_loss);
    result.history.val_accuracy.push_back(evaluate(params, val));
    result.history.stopping_epoch = epoch + 1;

    if (val_loss < best_val) {
      best_val = val_loss;
      result.params = params;
      result.history.best_epoch = epoch;
      stale = 0;
    } else if (++stale > cfg.patience) {
      break;
    }
  }
  return result;
}

TrainResult train(std::span<const Sample> train, std::span<const Sample> val,
                  const TrainConfig& cfg) {
  return train_network(kMlpDims, ModelKind::kMlp, train, val, cfg);
}

TrainResult train_logistic(std::span<const Sample> train, std::span<const Sample> val,
                           const TrainConfig& cfg) {
  return train_network(kLogisticDims, ModelKind::kLogistic, train, val, cfg);
}

}  // namespace agv::nn
