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

#include "agv/planner/plan_io.hpp"

#include "json.hpp"

namespace agv::planner {

std::string serialize_plan(const Plan& plan, const terrain::TerrainGraph& graph,
                           std::optional<int64_t> interventions) {
  nlohmann::ordered_json doc;
  auto walk = nlohmann::ordered_json::array();
  for (NodeIndex v : plan.walk) walk.push_back(graph.nodes()[v].id);
  doc["walk"] = std::move(walk);
  doc["d_end_m"] = plan.d_end_m();
  doc["p_end"] = plan.p_end_real();
  if (interventions) doc["interventions"] = *interventions;
  doc["optimal"] = plan.optimal;
  doc["nodes_explored"] = plan.nodes_explored;
  doc["solver"] = std::string(solver_name(plan.mode));
  return doc.dump(1) + "\n";
}

}  // namespace agv::planner
