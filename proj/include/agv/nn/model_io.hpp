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

#ifndef AGV_NN_MODEL_IO_HPP_
#define AGV_NN_MODEL_IO_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "agv/nn/mlp.hpp"

namespace agv::nn {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// model-JSON: {"dims":[...],"layers":[{"w":[[...]],"b":[...]}],
//              "normalizer":[...],"kind":"mlp"|"logistic"}
std::string serialize_model(const MlpParams& params);
// Throws ModelError on malformed input.
MlpParams load_model(std::string_view text);

}  // namespace agv::nn

#endif  // AGV_NN_MODEL_IO_HPP_
