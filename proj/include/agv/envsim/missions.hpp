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

#ifndef AGV_ENVSIM_MISSIONS_HPP_
#define AGV_ENVSIM_MISSIONS_HPP_

#include <cstdint>
#include <vector>

#include "agv/common/rng.hpp"
#include "agv/terrain/graph.hpp"
#include "agv/terrain/instance.hpp"

namespace agv::envsim {

inline constexpr int kMaxMandatory = 10;

// One random mission: start != dest uniform, |mandatory| uniform in
// {0..10} capped at n_nodes - 2, drawn without replacement from the other
// nodes. Requires at least 2 nodes.
terrain::Instance random_mission(const terrain::TerrainGraph& graph, Rng& rng);

// `count` missions, mission i drawn from its own stream derived from (seed, i).
std::vector<terrain::Instance> generate_missions(const terrain::TerrainGraph& graph, int count,
                                                 uint64_t seed);

}  // namespace agv::envsim

#endif  // AGV_ENVSIM_MISSIONS_HPP_
