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

#ifndef AGV_SRC_NN_WORKSPACE_HPP_
#define AGV_SRC_NN_WORKSPACE_HPP_

#include <vector>

#include "agv/nn/mlp.hpp"

namespace agv::nn::detail {

// Per-call activation buffers, reused across samples.
struct Workspace {
  explicit Workspace(const MlpParams& params);

  double run_forward(const MlpParams& params, const Features& features);
  // grad += scale * d(loss)/d(params) for one sample.
  void accumulate(const MlpParams& params, const Sample& sample, double scale, Gradients& grad);

  std::vector<std::vector<double>> pre;  // pre-activations per layer
  std::vector<std::vector<double>> act;  // act[0] is the normalized input
  std::vector<double> delta;
  std::vector<double> back;
};

}  // namespace agv::nn::detail

#endif  // AGV_SRC_NN_WORKSPACE_HPP_
