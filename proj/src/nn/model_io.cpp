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

#include "agv/nn/model_io.hpp"

#include "json.hpp"

namespace agv::nn {

using nlohmann::json;

std::string serialize_model(const MlpParams& params) {
  json layers = json::array();
  for (const DenseLayer& l : params.layers) {
    json rows = json::array();
    for (size_t r = 0; r < l.out; ++r) {
      rows.push_back(std::vector<double>(l.w.begin() + static_cast<std::ptrdiff_t>(r * l.in),
                                         l.w.begin() + static_cast<std::ptrdiff_t>((r + 1) * l.in)));
    }
    layers.push_back({{"w", std::move(rows)}, {"b", l.b}});
  }
  json doc = {{"dims", params.dims},
              {"layers", std::move(layers)},
              {"normalizer", params.normalizer},
              {"kind", params.kind == ModelKind::kMlp ? "mlp" : "logistic"}};
  return doc.dump() + "\n";
}

MlpParams load_model(std::string_view text) {
  MlpParams p;
  try {
    const json doc = json::parse(text);
    p.dims = doc.at("dims").get<std::vector<size_t>>();
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "mlp") {
      p.kind = ModelKind::kMlp;
    } else if (kind == "logistic") {
      p.kind = ModelKind::kLogistic;
    } else {
      throw ModelError("model kind must be 'mlp' or 'logistic'");
    }
    const auto norm = doc.at("normalizer").get<std::vector<double>>();
    if (norm.size() != p.normalizer.size()) throw ModelError("normalizer must have 5 entries");
    std::copy(norm.begin(), norm.end(), p.normalizer.begin());
    const json& layers = doc.at("layers");
    if (!layers.is_array() || layers.size() + 1 != p.dims.size()) {
      throw ModelError("layer count does not match dims");
    }
    for (size_t l = 0; l < layers.size(); ++l) {
      DenseLayer layer;
      layer.in = p.dims[l];
      layer.out = p.dims[l + 1];
      const auto rows = layers[l].at("w").get<std::vector<std::vector<double>>>();
      if (rows.size() != layer.out) throw ModelError("layer " + std::to_string(l) + ": bad row count");
      for (const auto& row : rows) {
        if (row.size() != layer.in) throw ModelError("layer " + std::to_string(l) + ": bad row width");
        layer.w.insert(layer.w.end(), row.begin(), row.end());
      }
      layer.b = layers[l].at("b").get<std::vector<double>>();
      p.layers.push_back(std::move(layer));
    }
    p.validate();
  } catch (const json::exception& e) {
    throw ModelError(std::string("model JSON error: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ModelError(std::string("invalid model: ") + e.what());
  }
  return p;
}

}  // namespace agv::nn
