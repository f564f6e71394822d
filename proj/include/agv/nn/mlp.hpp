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

#ifndef AGV_NN_MLP_HPP_
#define AGV_NN_MLP_HPP_

#include <span>
#include <vector>

#include "agv/envsim/dataset.hpp"
#include "agv/envsim/oracle.hpp"
#include "agv/terrain/graph.hpp"

namespace agv::nn {

using envsim::Features;
using envsim::Sample;

enum class ModelKind { kMlp, kLogistic };

// Fully connected layer, weights row-major (out x in).
struct DenseLayer {
  size_t in = 0;
  size_t out = 0;
  std::vector<double> w;
  std::vector<double> b;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

inline constexpr Features kDefaultNormalizer = {10.0, 10.0, 10.0, 45.0, 1000.0};
inline const std::vector<size_t> kMlpDims = {5, 32, 32, 16, 1};
inline const std::vector<size_t> kLogisticDims = {5, 1};

// Feedforward network: ReLU on hidden layers, sigmoid on the single output.
// Inputs are divided by `normalizer` and clamped to [0, 2] first.
struct MlpParams {
  std::vector<size_t> dims;
  std::vector<DenseLayer> layers;
  Features normalizer = kDefaultNormalizer;
  ModelKind kind = ModelKind::kMlp;

  static MlpParams zeros(const std::vector<size_t>& dims, ModelKind kind);
  // Throws std::invalid_argument on inconsistent shapes or non-finite values.
  void validate() const;
  size_t parameter_count() const;

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

// Same shape as the parameters.
struct Gradients {
  std::vector<DenseLayer> layers;

  static Gradients zeros_like(const MlpParams& params);
  double squared_norm() const;
};

// Probability that the edge is autonomously feasible, strictly inside (0, 1).
// Throws std::invalid_argument on non-finite features.
double forward(const MlpParams& params, const Features& features);

inline constexpr double kBceClamp = 1e-7;

// Binary cross-entropy with the prediction clamped to [1e-7, 1 - 1e-7].
double bce(double pred, int label);

// Gradient of the mean clamped BCE over `batch`. ReLU'(0) = 0, and the
// gradient through a clamped prediction is 0.
Gradients backward(const MlpParams& params, std::span<const Sample> batch);

double mean_loss(const MlpParams& params, std::span<const Sample> data);

// Fraction of samples with round(forward) == label, 0.5 rounding to 1.
double evaluate(const MlpParams& params, std::span<const Sample> data);

// Penalty 1 - forward(...) per edge, indexed by edge index.
std::vector<double> edge_preferences(const MlpParams& params, const terrain::TerrainGraph& graph,
                                     const envsim::Weather& w);

}  // namespace agv::nn

#endif  // AGV_NN_MLP_HPP_
