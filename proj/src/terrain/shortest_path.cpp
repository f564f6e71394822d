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

#include "agv/terrain/shortest_path.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace agv::terrain {

std::vector<ArcIndex> ShortestPathTree::path_to(const TerrainGraph& graph,
                                                NodeIndex target) const {
  std::vector<ArcIndex> path;
  if (!reachable(target)) return path;
  for (NodeIndex v = target; v != source;) {
    const ArcIndex a = parent[v];
    path.push_back(a);
    v = graph.arc(a).from;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

ShortestPathTree dijkstra(const TerrainGraph& graph, std::span<const int64_t> arc_weight,
                          NodeIndex source) {
  if (arc_weight.size() != static_cast<size_t>(graph.arc_count())) {
    throw std::invalid_argument("dijkstra: weight vector size does not match arc count");
  }
  if (source < 0 || source >= graph.node_count()) {
    throw std::invalid_argument("dijkstra: source out of range");
  }
  for (int64_t w : arc_weight) {
    if (w < 0) throw std::invalid_argument("dijkstra: negative arc weight");
  }

  ShortestPathTree tree;
  tree.source = source;
  tree.dist.assign(graph.node_count(), kUnreachable);
  tree.parent.assign(graph.node_count(), kNoIndex);
  tree.dist[source] = 0;

  using Entry = std::pair<int64_t, NodeIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.emplace(0, source);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d != tree.dist[v]) continue;
    for (ArcIndex a : graph.out_arcs(v)) {
      const NodeIndex w = graph.arc(a).to;
      const int64_t nd = d + arc_weight[a];
      if (nd < tree.dist[w]) {
        tree.dist[w] = nd;
        tree.parent[w] = a;
        queue.emplace(nd, w);
      }
    }
  }
  return tree;
}

std::vector<int64_t> distance_weights(const TerrainGraph& graph) {
  std::vector<int64_t> w(graph.arc_count());
  for (ArcIndex a = 0; a < graph.arc_count(); ++a) w[a] = graph.arc_dist_mm(a);
  return w;
}

std::optional<std::vector<ArcIndex>> greedy_chain(const TerrainGraph& graph,
                                                  std::span<const int64_t> arc_weight,
                                                  NodeIndex start, std::span<const NodeIndex> targets,
                                                  NodeIndex dest) {
  std::vector<bool> visited(graph.node_count(), false);
  visited[start] = true;
  std::vector<ArcIndex> walk;
  NodeIndex here = start;
  auto remaining = [&] {
    return std::any_of(targets.begin(), targets.end(), [&](NodeIndex t) { return !visited[t]; });
  };
  auto follow = [&](const ShortestPathTree& tree, NodeIndex to) {
    for (ArcIndex a : tree.path_to(graph, to)) {
      walk.push_back(a);
      visited[graph.arc(a).to] = true;
    }
    here = to;
  };
  while (remaining()) {
    const ShortestPathTree tree = dijkstra(graph, arc_weight, here);
    NodeIndex next = kNoIndex;
    for (NodeIndex t : targets) {
      if (visited[t]) continue;
      if (!tree.reachable(t)) return std::nullopt;
      if (next == kNoIndex || tree.dist[t] < tree.dist[next] ||
          (tree.dist[t] == tree.dist[next] && t < next)) {
        next = t;
      }
    }
    follow(tree, next);
  }
  if (here != dest) {
    const ShortestPathTree tree = dijkstra(graph, arc_weight, here);
    if (!tree.reachable(dest)) return std::nullopt;
    follow(tree, dest);
  }
  return walk;
}

std::vector<NodeIndex> arcs_to_walk(const TerrainGraph& graph, NodeIndex start,
                                    std::span<const ArcIndex> arcs) {
  std::vector<NodeIndex> walk{start};
  for (ArcIndex a : arcs) walk.push_back(graph.arc(a).to);
  return walk;
}

}  // namespace agv::terrain
