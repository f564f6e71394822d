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

#ifndef AGV_TERRAIN_GRAPH_HPP_
#define AGV_TERRAIN_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace agv::terrain {

using NodeIndex = int32_t;
using EdgeIndex = int32_t;
using ArcIndex = int32_t;

inline constexpr int32_t kNoIndex = -1;

struct Node {
  std::string id;
  double x = 0.0;  // meters
  double y = 0.0;
  double z = 0.0;  // elevation, meters

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string id;
  std::string u;
  std::string v;
  double dist_m = 0.0;
  double max_slope_deg = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A directed arc. Edge e expands to arc 2e (u -> v) and arc 2e+1 (v -> u).
struct Arc {
  NodeIndex from = kNoIndex;
  NodeIndex to = kNoIndex;
  EdgeIndex edge = kNoIndex;
};

// Raised for malformed graphs; `offending_id` names the node or edge at fault.
class GraphError : public std::runtime_error {
 public:
  GraphError(const std::string& what, std::string offending_id)
      : std::runtime_error(what), offending_id_(std::move(offending_id)) {}
  const std::string& offending_id() const { return offending_id_; }

 private:
  std::string offending_id_;
};

// Immutable undirected terrain graph with its directed arc expansion.
// Distances are mirrored as integer millimeters for exact comparisons.
class TerrainGraph {
 public:
  TerrainGraph() = default;

  // Validates ids, endpoints and edge attributes. Connectivity is checked
  // separately (see is_connected) so tests can build split graphs.
  TerrainGraph(std::vector<Node> nodes, std::vector<Edge> edges);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  int32_t node_count() const { return static_cast<int32_t>(nodes_.size()); }
  int32_t edge_count() const { return static_cast<int32_t>(edges_.size()); }
  int32_t arc_count() const { return static_cast<int32_t>(arcs_.size()); }

  const Node& node(NodeIndex i) const { return nodes_[i]; }
  const Edge& edge(EdgeIndex i) const { return edges_[i]; }
  const Arc& arc(ArcIndex a) const { return arcs_[a]; }

  std::optional<NodeIndex> find_node(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  // Throws GraphError if the id is unknown.
  NodeIndex node_index(std::string_view id) const;

  std::optional<EdgeIndex> edge_between(NodeIndex a, NodeIndex b) const;
  std::optional<ArcIndex> arc_between(NodeIndex from, NodeIndex to) const;

  // Arc ids in ascending order.
  std::span<const ArcIndex> out_arcs(NodeIndex v) const {
    return {out_flat_.data() + out_begin_[v], out_flat_.data() + out_begin_[v + 1]};
  }
  std::span<const ArcIndex> in_arcs(NodeIndex v) const {
    return {in_flat_.data() + in_begin_[v], in_flat_.data() + in_begin_[v + 1]};
  }

  int64_t edge_dist_mm(EdgeIndex e) const { return dist_mm_[e]; }
  int64_t arc_dist_mm(ArcIndex a) const { return dist_mm_[arcs_[a].edge]; }
  NodeIndex edge_u(EdgeIndex e) const { return arcs_[2 * e].from; }
  NodeIndex edge_v(EdgeIndex e) const { return arcs_[2 * e].to; }

  // Component label per node (labels are dense, starting at 0).
  std::vector<int32_t> component_labels() const;
  bool is_connected() const;

  friend bool operator==(const TerrainGraph& a, const TerrainGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Arc> arcs_;
  std::vector<int64_t> dist_mm_;
  std::unordered_map<std::string, NodeIndex> node_by_id_;
  std::unordered_map<std::string, EdgeIndex> edge_by_id_;
  std::unordered_map<uint64_t, EdgeIndex> edge_by_pair_;
  std::vector<int32_t> out_begin_, in_begin_;
  std::vector<ArcIndex> out_flat_, in_flat_;
};

// Converts meters to integer millimeters (round half away from zero, at least 1).
int64_t meters_to_mm(double meters);

}  // namespace agv::terrain

#endif  // AGV_TERRAIN_GRAPH_HPP_
