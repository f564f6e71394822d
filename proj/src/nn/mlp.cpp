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

#include "agv/nn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "agv/nn/kernels.hpp"
#include "src/nn/workspace.hpp"

namespace agv::nn {
namespace {

constexpr double kProbFloor = 1e-300;
constexpr double kProbCeil = 1.0 - 0x1.0p-53;

double sigmoid(double z) {
  double p;
  if (z >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    p = e / (1.0 + e);
  }
  return std::clamp(p, kProbFloor, kProbCeil);
}

}  // namespace

MlpParams MlpParams::zeros(const std::vector<size_t>& dims, ModelKind kind) {
  if (dims.size() < 2) throw std::invalid_argument("a network needs at least two layer dims");
  MlpParams p;
  p.dims = dims;
  p.kind = kind;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer;
    layer.in = dims[l];
    layer.out = dims[l + 1];
    layer.w.assign(layer.in * layer.out, 0.0);
    layer.b.assign(layer.out, 0.0);
    p.layers.push_back(std::move(layer));
  }
  return p;
}

void MlpParams::validate() const {
  if (dims.size() < 2 || layers.size() + 1 != dims.size()) {
    throw std::invalid_argument("layer count does not match dims");
  }
  if (dims.front() != static_cast<size_t>(envsim::kFeatureCount) || dims.back() != 1) {
    throw std::invalid_argument("network must map 5 features to 1 output");
  }
  for (size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    if (layer.in != dims[l] || layer.out != dims[l + 1] || layer.w.size() != layer.in * layer.out ||
        layer.b.size() != layer.out) {
      throw std::invalid_argument("layer " + std::to_string(l) + " has inconsistent shape");
    }
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(layer.w.begin(), layer.w.end(), finite) ||
        !std::all_of(layer.b.begin(), layer.b.end(), finite)) {
      throw std::invalid_argument("layer " + std::to_string(l) + " has non-finite parameters");
    }
  }
  for (double d : normalizer) {
    if (!(std::isfinite(d) && d > 0.0)) throw std::invalid_argument("normalizer must be positive");
  }
}

size_t MlpParams::parameter_count() const {
  size_t n = 0;
  for (const auto& l : layers) n += l.w.size() + l.b.size();
  return n;
}

Gradients Gradients::zeros_like(const MlpParams& params) {
  Gradients g;
  for (const auto& l : params.layers) {
    g.layers.push_back({l.in, l.out, std::vector<double>(l.w.size(), 0.0),
                        std::vector<double>(l.b.size(), 0.0)});
  }
  return g;
}

double Gradients::squared_norm() const {
  double s = 0.0;
  for (const auto& l : layers) {
    for (double v : l.w) s += v * v;
    for (double v : l.b) s += v * v;
  }
  return s;
}

namespace detail {

Workspace::Workspace(const MlpParams& params) {
  pre.resize(params.layers.size());
  act.resize(params.layers.size() + 1);
  act[0].assign(params.dims.front(), 0.0);
  size_t widest = 0;
  for (size_t l = 0; l < params.layers.size(); ++l) {
    pre[l].assign(params.layers[l].out, 0.0);
    act[l + 1].assign(params.layers[l].out, 0.0);
    widest = std::max({widest, params.layers[l].out, params.layers[l].in});
  }
  delta.assign(widest, 0.0);
  back.assign(widest, 0.0);
}

double Workspace::run_forward(const MlpParams& params, const Features& features) {
  const auto& k = kernels::active();
  for (size_t i = 0; i < act[0].size(); ++i) {
    if (!std::isfinite(features[i])) throw std::invalid_argument("non-finite input feature");
    act[0][i] = std::clamp(features[i] / params.normalizer[i], 0.0, 2.0);
  }
  const size_t last = params.layers.size() - 1;
  for (size_t l = 0; l <= last; ++l) {
    const DenseLayer& layer = params.layers[l];
    k.affine(layer.w.data(), layer.b.data(), act[l].data(), pre[l].data(), layer.out, layer.in);
    if (l < last) {
      for (size_t j = 0; j < layer.out; ++j) act[l + 1][j] = pre[l][j] > 0.0 ? pre[l][j] : 0.0;
    } else {
      act[l + 1][0] = sigmoid(pre[l][0]);
    }
  }
  return act.back()[0];
}

void Workspace::accumulate(const MlpParams& params, const Sample& sample, double scale,
                           Gradients& grad) {
  const auto& k = kernels::active();
  const double p = run_forward(params, sample.features);
  const bool clamped = p < kBceClamp || p > 1.0 - kBceClamp;
  delta[0] = clamped ? 0.0 : p - static_cast<double>(sample.label);
  for (size_t l = params.layers.size(); l-- > 0;) {
    const DenseLayer& layer = params.layers[l];
    DenseLayer& g = grad.layers[l];
    k.rank1_update(g.w.data(), delta.data(), act[l].data(), scale, layer.out, layer.in);
    k.axpy(g.b.data(), delta.data(), scale, layer.out);
    if (l == 0) break;
    k.affine_transposed(layer.w.data(), delta.data(), back.data(), layer.out, layer.in);
    for (size_t j = 0; j < layer.in; ++j) delta[j] = pre[l - 1][j] > 0.0 ? back[j] : 0.0;
  }
}

}  // namespace detail

double forward(const MlpParams& params, const Features& features) {
  detail::Workspace ws(params);
  return ws.run_forward(params, features);
}

double bce(double pred, int label) {
  const double p = std::clamp(pred, kBceClamp, 1.0 - kBceClamp);
  return label == 1 ? -std::log(p) : -std::log(1.0 - p);
}

Gradients backward(const MlpParams& params, std::span<const Sample> batch) {
  if (batch.empty()) throw std::invalid_argument("backward needs a nonempty batch");
  Gradients grad = Gradients::zeros_like(params);
  detail::Workspace ws(params);
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (const Sample& s : batch) ws.accumulate(params, s, scale, grad);
  return grad;
}

double mean_loss(const MlpParams& params, std::span<const Sample> data) {
  if (data.empty()) throw std::invalid_argument("mean_loss needs data");
  detail::Workspace ws(params);
  double total = 0.0;
  for (const Sample& s : data) total += bce(ws.run_forward(params, s.features), s.label);
  return total / static_cast<double>(data.size());
}

double evaluate(const MlpParams& params, std::span<const Sample> data) {
  if (data.empty()) throw std::invalid_argument("evaluate needs data");
  detail::Workspace ws(params);
  size_t correct = 0;
  for (const Sample& s : data) {
    const int predicted = ws.run_forward(params, s.features) >= 0.5 ? 1 : 0;
    if (predicted == s.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<double> edge_preferences(const MlpParams& params, const terrain::TerrainGraph& graph,
                                     const envsim::Weather& w) {
  envsim::check_weather(w);
  detail::Workspace ws(params);
  std::vector<double> penalty(graph.edge_count());
  for (terrain::EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    penalty[e] = 1.0 - ws.run_forward(params, envsim::edge_features(graph.edge(e), w));
  }
  return penalty;
}

}  // namespace agv::nn
