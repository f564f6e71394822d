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

#ifndef AGV_TERRAIN_GRAPH_IO_HPP_
#define AGV_TERRAIN_GRAPH_IO_HPP_

#include <string>
#include <string_view>

#include "agv/terrain/graph.hpp"

namespace agv::terrain {

struct LoadOptions {
  bool require_connected = true;
};

// Parses a graph-JSON document:
//   {"nodes":[{"id","x","y","z"}], "edges":[{"id","u","v","dist_m"?,"max_slope_deg"?}]}
// A missing dist_m becomes the 3D endpoint distance; a missing max_slope_deg
// becomes atan(|dz| / planar distance). Throws GraphError.
TerrainGraph load_graph(std::string_view text, const LoadOptions& options = {});

// Deterministic pretty-printed graph-JSON; load_graph(serialize_graph(g)) == g.
std::string serialize_graph(const TerrainGraph& graph);

}  // namespace agv::terrain

#endif  // AGV_TERRAIN_GRAPH_IO_HPP_
