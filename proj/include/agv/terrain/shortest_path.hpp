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

#ifndef AGV_TERRAIN_SHORTEST_PATH_HPP_
#define AGV_TERRAIN_SHORTEST_PATH_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "agv/terrain/graph.hpp"

namespace agv::terrain {

inline constexpr int64_t kUnreachable = std::numeric_limits<int64_t>::max();

struct ShortestPathTree {
  NodeIndex source = kNoIndex;
  std::vector<int64_t> dist;     // kUnreachable when not reachable
  std::vector<ArcIndex> parent;  // arc entering the node on the tree, kNoIndex at the root

  bool reachable(NodeIndex v) const { return dist[v] != kUnreachable; }
  // Arcs from the source to `target`, in travel order. Empty if unreachable
  // or target == source.
  std::vector<ArcIndex> path_to(const TerrainGraph& graph, NodeIndex target) const;
};

// Single-source shortest paths over directed arcs with nonnegative integer
// weights (indexed by arc id). Throws std::invalid_argument on a negative
// weight or a size mismatch. Ties resolve toward the lowest node index on
// extraction and the first relaxing arc, so the tree is deterministic.
ShortestPathTree dijkstra(const TerrainGraph& graph, std::span<const int64_t> arc_weight,
                          NodeIndex source);

// Arc weights equal to edge distances in millimeters.
std::vector<int64_t> distance_weights(const TerrainGraph& graph);

// Greedy chain: from `start`, repeatedly travel to the nearest (by arc_weight)
// target not yet visited, then to `dest`. Any node passed on the way counts
// as visited. Returns the concatenated arc sequence, or nullopt if some
// target or `dest` is unreachable.
std::optional<std::vector<ArcIndex>> greedy_chain(const TerrainGraph& graph,
                                                  std::span<const int64_t> arc_weight,
                                                  NodeIndex start, std::span<const NodeIndex> targets,
                                                  NodeIndex dest);

// Node sequence of an arc sequence starting at `start`.
std::vector<NodeIndex> arcs_to_walk(const TerrainGraph& graph, NodeIndex start,
                                    std::span<const ArcIndex> arcs);

}  // namespace agv::terrain

#endif  // AGV_TERRAIN_SHORTEST_PATH_HPP_
