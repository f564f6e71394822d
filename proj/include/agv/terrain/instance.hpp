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

#ifndef AGV_TERRAIN_INSTANCE_HPP_
#define AGV_TERRAIN_INSTANCE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "agv/terrain/graph.hpp"

namespace agv::terrain {

// A planning request: go from `start` to `dest`, visiting every node in
// `mandatory` at least once, in any order.
struct Instance {
  std::string start;
  std::string dest;
  std::vector<std::string> mandatory;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Returns human-readable violations; an empty list means the instance is
// valid. The start node counts as visited at departure and the destination
// at arrival, so listing either one as mandatory is fine.
std::vector<std::string> validate_instance(const TerrainGraph& graph, const Instance& inst);

// instance-JSON: {"start":str,"dest":str,"mandatory":[str]}. Throws GraphError.
Instance load_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

}  // namespace agv::terrain

#endif  // AGV_TERRAIN_INSTANCE_HPP_
