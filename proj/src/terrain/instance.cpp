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

#include "agv/terrain/instance.hpp"

#include <unordered_set>

#include "json.hpp"

namespace agv::terrain {

std::vector<std::string> validate_instance(const TerrainGraph& graph, const Instance& inst) {
  std::vector<std::string> violations;
  std::vector<NodeIndex> required;
  auto check = [&](const std::string& id, const char* role) {
    if (auto i = graph.find_node(id)) {
      required.push_back(*i);
    } else {
      violations.push_back(std::string("unknown node '") + id + "' (" + role + ")");
    }
  };
  check(inst.start, "start");
  check(inst.dest, "dest");
  std::unordered_set<std::string> seen;
  for (const std::string& m : inst.mandatory) {
    if (!seen.insert(m).second) {
      violations.push_back("duplicate mandatory node '" + m + "'");
      continue;
    }
    check(m, "mandatory");
  }
  if (!required.empty()) {
    // Edges are undirected, so one component label check gives mutual reachability.
    const auto labels = graph.component_labels();
    const int32_t root = labels[required.front()];
    for (NodeIndex v : required) {
      if (labels[v] != root) {
        violations.push_back("node '" + graph.node(v).id + "' is unreachable from '" +
                             graph.node(required.front()).id + "'");
      }
    }
  }
  return violations;
}

Instance load_instance(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(std::string("instance JSON parse error: ") + e.what(), "");
  }
  Instance inst;
  try {
    inst.start = doc.at("start").get<std::string>();
    inst.dest = doc.at("dest").get<std::string>();
    if (doc.contains("mandatory")) inst.mandatory = doc.at("mandatory").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw GraphError(std::string("instance JSON schema error: ") + e.what(), "");
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  nlohmann::json doc = {{"start", inst.start}, {"dest", inst.dest}, {"mandatory", inst.mandatory}};
  return doc.dump() + "\n";
}

}  // namespace agv::terrain
