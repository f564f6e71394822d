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

#ifndef AGV_TERRAIN_GENERATOR_HPP_
#define AGV_TERRAIN_GENERATOR_HPP_

#include <cstdint>

#include "agv/terrain/graph.hpp"

namespace agv::terrain {

// Side of the square sampling area, meters.
inline constexpr double kTerrainSide = 5000.0;

// Synthetic elevation in [0, 200] m: broad rolling plains plus hill patches.
//   wave_k(x, y) = sin(2 pi x / L_k + px_k) sin(2 pi y / L_k + py_k)
//   z = 100 + 20 wave_0 + 70 clamp(wave_2 - 0.1, 0, 1) wave_1
// with (L_0, L_1, L_2) = (5000, 500, 2000) m and phases drawn from the
// generator seed. wave_2 masks where the short hills appear, so slopes range
// from near flat to nearly 40 degrees.
class ElevationField {
 public:
  explicit ElevationField(uint64_t seed);
  double operator()(double x, double y) const;

 private:
  double phase_x_[3];
  double phase_y_[3];
};

// Random terrain graph: n nodes uniform in the square, each linked to its k
// nearest planar neighbours, plus any minimum-spanning-tree edges needed for
// connectivity. Edge length and max slope are measured along a sampled
// elevation profile (length rounded up to the millimeter). Node ids are
// "n<i>", edge ids "e<j>". Deterministic in (n_nodes, k_nearest, seed).
TerrainGraph generate_graph(int n_nodes, int k_nearest, uint64_t seed);

}  // namespace agv::terrain

#endif  // AGV_TERRAIN_GENERATOR_HPP_
