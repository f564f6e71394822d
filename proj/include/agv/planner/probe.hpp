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

#ifndef AGV_PLANNER_PROBE_HPP_
#define AGV_PLANNER_PROBE_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "agv/planner/flow_model.hpp"

namespace agv::planner {

enum class ProbeMetric { kPreference, kDistance };

// Preference weight = penalty * kPreferenceFactor + dist_mm. With penalties in
// thousandths and distances in millimeters this is lexicographic (penalty
// first) for any walk shorter than 1000 km.
inline constexpr int64_t kPreferenceFactor = 1'000'000'000;

struct ProbeResult {
  std::vector<ArcIndex> arcs;   // in travel order, may repeat
  std::vector<NodeIndex> walk;  // start ... dest
  int64_t dist_mm = 0;
  int64_t penalty = 0;
  // True when the arc multiset is itself an admissible plan (each arc once,
  // capacities respected), so it can serve as the initial incumbent.
  bool admissible = false;
};

// Greedy chain of Dijkstra runs: nearest unvisited waypoint first, then the
// destination. nullopt if something required is unreachable.
std::optional<ProbeResult> probe(const FlowModel& model, ProbeMetric metric);

// Tour probe: the best waypoint visiting order over the shortest-path
// closure (nearest-first when there are too many waypoints), with each leg
// routed only over arcs the earlier legs left unused and within the vertex
// pass limits. nullopt when some leg cannot be routed that way.
std::optional<ProbeResult> tour_probe(const FlowModel& model, ProbeMetric metric);

}  // namespace agv::planner

#endif  // AGV_PLANNER_PROBE_HPP_
