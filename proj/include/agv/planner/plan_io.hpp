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

#ifndef AGV_PLANNER_PLAN_IO_HPP_
#define AGV_PLANNER_PLAN_IO_HPP_

#include <optional>
#include <string>

#include "agv/planner/search.hpp"

namespace agv::planner {

// plan-JSON: {"walk":[node ids],"d_end_m":num,"p_end":num,"interventions":int?,
//             "optimal":bool,"nodes_explored":int,"solver":"pco"|"pcmco"}
std::string serialize_plan(const Plan& plan, const terrain::TerrainGraph& graph,
                           std::optional<int64_t> interventions = std::nullopt);

}  // namespace agv::planner

#endif  // AGV_PLANNER_PLAN_IO_HPP_
