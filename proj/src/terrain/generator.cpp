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

#include "agv/terrain/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "agv/common/rng.hpp"

namespace agv::terrain {
namespace {

constexpr double kWavelength[3] = {5000.0, 500.0, 2000.0};
constexpr double kPlainAmplitude = 20.0;
constexpr double kHillAmplitude = 70.0;
constexpr double kHillMaskBias = -0.1;
constexpr double kProfileStep = 20.0;  // meters between profile samples
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

ElevationField::ElevationField(uint64_t seed) {
  Rng rng(derive_seed(seed, {0xE1E7}));
  for (int k = 0; k < 3; ++k) {
    phase_x_[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    phase_y_[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  }
}

double ElevationField::operator()(double x, double y) const {
  double wave[3];
  for (int k = 0; k < 3; ++k) {
    const double w = 2.0 * std::numbers::pi / kWavelength[k];
    wave[k] = std::sin(w * x + phase_x_[k]) * std::sin(w * y + phase_y_[k]);
  }
  const double mask = std::clamp(wave[2] + kHillMaskBias, 0.0, 1.0);
  return 100.0 + kPlainAmplitude * wave[0] + kHillAmplitude * mask * wave[1];
}

TerrainGraph generate_graph(int n_nodes, int k_nearest, uint64_t seed) {
  const ElevationField field(seed);
  Rng rng(derive_seed(seed, {0x90DE5}));

  const auto n = static_cast<size_t>(std::max(n_nodes, 0));
  std::vector<Node> nodes(n);
  for (size_t i = 0; i < n; ++i) {
    nodes[i].id = "n" + std::to_string(i);
    nodes[i].x = rng.uniform(0.0, kTerrainSide);
    nodes[i].y = rng.uniform(0.0, kTerrainSide);
    nodes[i].z = field(nodes[i].x, nodes[i].y);
  }
  auto planar = [&](size_t a, size_t b) {
    return std::hypot(nodes[a].x - nodes[b].x, nodes[a].y - nodes[b].y);
  };

  std::set<std::pair<size_t, size_t>> pairs;
  auto link = [&](size_t a, size_t b) { pairs.emplace(std::min(a, b), std::max(a, b)); };

  std::vector<size_t> order;
  for (size_t i = 0; i < n; ++i) {
    order.clear();
    for (size_t j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    const size_t take = std::min(order.size(), static_cast<size_t>(std::max(k_nearest, 0)));
    std::partial_sort(order.begin(), order.begin() + take, order.end(), [&](size_t a, size_t b) {
      const double da = planar(i, a), db = planar(i, b);
      return da < db || (da == db && a < b);
    });
    for (size_t t = 0; t < take; ++t) link(i, order[t]);
  }

  // Prim's MST over the complete planar graph.
  if (n > 1) {
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<size_t> from(n, 0);
    std::vector<bool> in_tree(n, false);
    best[0] = 0.0;
    for (size_t step = 0; step < n; ++step) {
      size_t u = n;
      for (size_t v = 0; v < n; ++v) {
        if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
      }
      in_tree[u] = true;
      if (step > 0) link(from[u], u);
      for (size_t v = 0; v < n; ++v) {
        if (in_tree[v]) continue;
        const double d = planar(u, v);
        if (d < best[v]) {
          best[v] = d;
          from[v] = u;
        }
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    const Node& na = nodes[a];
    const Node& nb = nodes[b];
    const double span = planar(a, b);
    const int steps = std::max(8, static_cast<int>(std::ceil(span / kProfileStep)));
    double length = 0.0;
    double max_slope = 0.0;
    double px = na.x, py = na.y, pz = na.z;
    for (int s = 1; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      const double x = na.x + t * (nb.x - na.x);
      const double y = na.y + t * (nb.y - na.y);
      const double z = s == steps ? nb.z : field(x, y);
      const double dl = std::hypot(x - px, y - py);
      const double dz = z - pz;
      length += std::hypot(dl, dz);
      if (dl > 0.0) max_slope = std::max(max_slope, std::atan(std::abs(dz) / dl) * kRadToDeg);
      px = x;
      py = y;
      pz = z;
    }
    Edge e;
    e.id = "e" + std::to_string(edges.size());
    e.u = na.id;
    e.v = nb.id;
    e.dist_m = std::max(1.0, std::ceil(length * 1000.0)) / 1000.0;
    e.max_slope_deg = std::min(max_slope, 89.0);
    edges.push_back(std::move(e));
  }
  return TerrainGraph(std::move(nodes), std::move(edges));
}

}  // namespace agv::terrain
