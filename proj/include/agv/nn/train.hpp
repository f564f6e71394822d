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

#ifndef AGV_NN_TRAIN_HPP_
#define AGV_NN_TRAIN_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "agv/nn/mlp.hpp"

namespace agv::nn {

enum class InitScheme { kHeUniform, kZeros };

struct TrainConfig {
  double learning_rate = 0.01;
  double momentum = 0.9;
  int batch_size = 32;
  int max_epochs = 500;
  int patience = 20;
  uint64_t seed = 0;
  InitScheme init = InitScheme::kHeUniform;

  void validate() const;
};

struct TrainHistory {
  std::vector<double> train_loss;  // full-pass mean BCE after each epoch
  std::vector<double> val_loss;
  std::vector<double> val_accuracy;
  int stopping_epoch = 0;  // epochs actually run
  int best_epoch = 0;      // 0-based epoch whose parameters were returned
};

struct TrainResult {
  MlpParams params;
  TrainHistory history;
};

// Mini-batch SGD with momentum on mean BCE. Batches are reshuffled every
// epoch from a stream derived from (seed, epoch). Training stops once the
// validation loss has failed to improve for more than `patience` consecutive
// epochs, and the parameters of the best validation epoch are returned.
// Throws std::invalid_argument on empty splits or a single-class train set.
TrainResult train_network(const std::vector<size_t>& dims, ModelKind kind,
                          std::span<const Sample> train, std::span<const Sample> val,
                          const TrainConfig& cfg);

// 5-32-32-16-1 ReLU network.
TrainResult train(std::span<const Sample> train, std::span<const Sample> val,
                  const TrainConfig& cfg);

// Single affine map plus sigmoid.
TrainResult train_logistic(std::span<const Sample> train, std::span<const Sample> val,
                           const TrainConfig& cfg);

}  // namespace agv::nn

#endif  // AGV_NN_TRAIN_HPP_
