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

#include "agv/planner/walk.hpp"

#include <algorithm>
#include <string>

namespace agv::planner {

std::vector<NodeIndex> extract_walk(const terrain::TerrainGraph& graph,
                                    std::span<const ArcIndex> arcs, NodeIndex start,
                                    NodeIndex dest) {
  const int32_t n = graph.node_count();
  std::vector<int> net(n, 0);
  std::vector<std::vector<ArcIndex>> adjacency(n);
  for (ArcIndex a : arcs) {
    if (a < 0 || a >= graph.arc_count()) throw WalkError("arc id out of range");
    const terrain::Arc& arc = graph.arc(a);
    adjacency[arc.from].push_back(a);
    ++net[arc.from];
    --net[arc.to];
  }
  for (NodeIndex v = 0; v < n; ++v) {
    int expected = 0;
    if (start != dest) expected = v == start ? 1 : (v == dest ? -1 : 0);
    if (net[v] != expected) {
      throw WalkError("arc set is unbalanced at node '" + graph.node(v).id + "'");
    }
  }
  for (auto& adj : adjacency) std::stable_sort(adj.begin(), adj.end());

  std::vector<size_t> next(n, 0);
  std::vector<NodeIndex> stack{start};
  std::vector<NodeIndex> trail;
  trail.reserve(arcs.size() + 1);
  while (!stack.empty()) {
    const NodeIndex v = stack.back();
    if (next[v] < adjacency[v].size()) {
      stack.push_back(graph.arc(adjacency[v][next[v]++]).to);
    } else {
      trail.push_back(v);
      stack.pop_back();
    }
  }
  std::reverse(trail.begin(), trail.end());
  if (trail.size() != arcs.size() + 1) {
    throw WalkError("selected arcs are not connected to the start node");
  }
  return trail;
}

PlanCost plan_cost(std::span<const NodeIndex> walk, const FlowModel& model) {
  PlanCost cost;
  int64_t dist = 0;
  int64_t pen = 0;
  for (size_t i = 1; i < walk.size(); ++i) {
    const auto arc = model.graph().arc_between(walk[i - 1], walk[i]);
    if (!arc) {
      throw WalkError("walk steps between non-adjacent nodes '" +
                      model.graph().node(walk[i - 1]).id + "' and '" +
                      model.graph().node(walk[i]).id + "'");
    }
    dist += model.arc(*arc).dist_mm;
    pen += model.arc(*arc).penalty;
  }
  cost.dist_m = static_cast<double>(dist) / 1000.0;
  cost.penalty = static_cast<double>(pen) / static_cast<double>(kPenaltyScale);
  return cost;
}

}  // namespace agv::planner
