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

#include "agv/terrain/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace agv::terrain {
namespace {

uint64_t pair_key(NodeIndex a, NodeIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

}  // namespace

int64_t meters_to_mm(double meters) {
  return std::max<int64_t>(1, std::llround(meters * 1000.0));
}

TerrainGraph::TerrainGraph(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (!std::isfinite(n.x) || !std::isfinite(n.y) || !std::isfinite(n.z)) {
      throw GraphError("node '" + n.id + "' has non-finite coordinates", n.id);
    }
    if (!node_by_id_.emplace(n.id, static_cast<NodeIndex>(i)).second) {
      throw GraphError("duplicate node id '" + n.id + "'", n.id);
    }
  }

  const auto n = static_cast<size_t>(node_count());
  arcs_.reserve(2 * edges_.size());
  dist_mm_.reserve(edges_.size());
  std::vector<int32_t> out_deg(n, 0), in_deg(n, 0);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (!edge_by_id_.emplace(e.id, static_cast<EdgeIndex>(i)).second) {
      throw GraphError("duplicate edge id '" + e.id + "'", e.id);
    }
    auto u = node_by_id_.find(e.u);
    if (u == node_by_id_.end()) {
      throw GraphError("edge '" + e.id + "' references unknown node '" + e.u + "'", e.u);
    }
    auto v = node_by_id_.find(e.v);
    if (v == node_by_id_.end()) {
      throw GraphError("edge '" + e.id + "' references unknown node '" + e.v + "'", e.v);
    }
    if (u->second == v->second) {
      throw GraphError("edge '" + e.id + "' is a self-loop", e.id);
    }
    if (!(std::isfinite(e.dist_m) && e.dist_m > 0.0)) {
      throw GraphError("edge '" + e.id + "' must have dist_m > 0", e.id);
    }
    if (!(std::isfinite(e.max_slope_deg) && e.max_slope_deg >= 0.0 && e.max_slope_deg < 90.0)) {
      throw GraphError("edge '" + e.id + "' must have max_slope_deg in [0, 90)", e.id);
    }
    if (!edge_by_pair_.emplace(pair_key(u->second, v->second), static_cast<EdgeIndex>(i)).second) {
      throw GraphError("edge '" + e.id + "' duplicates an existing node pair", e.id);
    }
    const auto ei = static_cast<EdgeIndex>(i);
    arcs_.push_back({u->second, v->second, ei});
    arcs_.push_back({v->second, u->second, ei});
    dist_mm_.push_back(meters_to_mm(e.dist_m));
    ++out_deg[u->second];
    ++in_deg[v->second];
    ++out_deg[v->second];
    ++in_deg[u->second];
  }

  out_begin_.assign(n + 1, 0);
  in_begin_.assign(n + 1, 0);
  for (size_t v = 0; v < n; ++v) {
    out_begin_[v + 1] = out_begin_[v] + out_deg[v];
    in_begin_[v + 1] = in_begin_[v] + in_deg[v];
  }
  out_flat_.resize(arcs_.size());
  in_flat_.resize(arcs_.size());
  std::vector<int32_t> out_fill(out_begin_.begin(), out_begin_.end() - 1);
  std::vector<int32_t> in_fill(in_begin_.begin(), in_begin_.end() - 1);
  // Arcs are visited in ascending id order, so each slice is sorted.
  for (size_t a = 0; a < arcs_.size(); ++a) {
    out_flat_[out_fill[arcs_[a].from]++] = static_cast<ArcIndex>(a);
    in_flat_[in_fill[arcs_[a].to]++] = static_cast<ArcIndex>(a);
  }
}

std::optional<NodeIndex> TerrainGraph::find_node(std::string_view id) const {
  auto it = node_by_id_.find(std::string(id));
  if (it == node_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> TerrainGraph::find_edge(std::string_view id) const {
  auto it = edge_by_id_.find(std::string(id));
  if (it == edge_by_id_.end()) return std::nullopt;
  return it->second;
}

NodeIndex TerrainGraph::node_index(std::string_view id) const {
  if (auto i = find_node(id)) return *i;
  throw GraphError("unknown node '" + std::string(id) + "'", std::string(id));
}

std::optional<EdgeIndex> TerrainGraph::edge_between(NodeIndex a, NodeIndex b) const {
  auto it = edge_by_pair_.find(pair_key(a, b));
  if (it == edge_by_pair_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcIndex> TerrainGraph::arc_between(NodeIndex from, NodeIndex to) const {
  auto e = edge_between(from, to);
  if (!e) return std::nullopt;
  return arcs_[2 * *e].from == from ? 2 * *e : 2 * *e + 1;
}

std::vector<int32_t> TerrainGraph::component_labels() const {
  std::vector<int32_t> label(nodes_.size(), -1);
  std::vector<NodeIndex> stack;
  int32_t next = 0;
  for (NodeIndex root = 0; root < node_count(); ++root) {
    if (label[root] >= 0) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeIndex v = stack.back();
      stack.pop_back();
      for (ArcIndex a : out_arcs(v)) {
        NodeIndex w = arcs_[a].to;
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool TerrainGraph::is_connected() const {
  const auto labels = component_labels();
  return std::all_of(labels.begin(), labels.end(), [](int32_t l) { return l == 0; });
}

}  // namespace agv::terrain
