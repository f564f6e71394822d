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

#ifndef AGV_PLANNER_WALK_HPP_
#define AGV_PLANNER_WALK_HPP_

#include <span>
#include <stdexcept>
#include <vector>

#include "agv/planner/flow_model.hpp"
#include "agv/terrain/graph.hpp"

namespace agv::planner {

class WalkError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Orders a selected arc multiset into a start -> dest trail that uses every
// arc exactly once (Hierholzer). At a junction the lowest arc id is taken
// first. Throws WalkError if the arcs are unbalanced for (start, dest) or do
// not form one connected piece containing start.
std::vector<NodeIndex> extract_walk(const terrain::TerrainGraph& graph,
                                    std::span<const ArcIndex> arcs, NodeIndex start,
                                    NodeIndex dest);

struct PlanCost {
  double dist_m = 0.0;
  double penalty = 0.0;
};

// Sums distance and (unscaled) penalty over the traversed arcs, repeats
// included. Throws WalkError on a step between non-adjacent nodes.
PlanCost plan_cost(std::span<const NodeIndex> walk, const FlowModel& model);

}  // namespace agv::planner

#endif  // AGV_PLANNER_WALK_HPP_
