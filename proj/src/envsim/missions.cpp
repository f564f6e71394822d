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

#include "agv/envsim/missions.hpp"

#include <algorithm>
#include <stdexcept>

namespace agv::envsim {

terrain::Instance random_mission(const terrain::TerrainGraph& graph, Rng& rng) {
  const int64_t n = graph.node_count();
  if (n < 2) throw std::invalid_argument("missions need a graph with at least 2 nodes");
  const auto start = rng.uniform_int(0, n - 1);
  auto dest = rng.uniform_int(0, n - 2);
  if (dest >= start) ++dest;
  const auto size = std::min<int64_t>(rng.uniform_int(0, kMaxMandatory), n - 2);

  std::vector<terrain::NodeIndex> pool;
  pool.reserve(n - 2);
  for (terrain::NodeIndex v = 0; v < n; ++v) {
    if (v != start && v != dest) pool.push_back(v);
  }
  // Partial Fisher-Yates: the first `size` slots are the sample.
  for (int64_t i = 0; i < size; ++i) {
    const auto j = rng.uniform_int(i, static_cast<int64_t>(pool.size()) - 1);
    std::swap(pool[i], pool[j]);
  }

  terrain::Instance inst;
  inst.start = graph.node(static_cast<terrain::NodeIndex>(start)).id;
  inst.dest = graph.node(static_cast<terrain::NodeIndex>(dest)).id;
  for (int64_t i = 0; i < size; ++i) inst.mandatory.push_back(graph.node(pool[i]).id);
  return inst;
}

std::vector<terrain::Instance> generate_missions(const terrain::TerrainGraph& graph, int count,
                                                 uint64_t seed) {
  std::vector<terrain::Instance> missions;
  missions.reserve(std::max(count, 0));
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, {0x3155, static_cast<uint64_t>(i)}));
    missions.push_back(random_mission(graph, rng));
  }
  return missions;
}

}  // namespace agv::envsim
