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

#include "agv/terrain/graph_io.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace agv::terrain {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& owner) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw GraphError("'" + owner + "' is missing field '" + key + "'", owner);
  }
  return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& owner) {
  const json& v = require(obj, key, owner);
  if (!v.is_string()) throw GraphError("'" + owner + "' field '" + key + "' must be a string", owner);
  return v.get<std::string>();
}

double require_number(const json& obj, const char* key, const std::string& owner) {
  const json& v = require(obj, key, owner);
  if (!v.is_number()) throw GraphError("'" + owner + "' field '" + key + "' must be a number", owner);
  return v.get<double>();
}

std::string id_of(const json& obj, const char* what, size_t index) {
  if (!obj.is_object()) {
    throw GraphError(std::string(what) + " #" + std::to_string(index) + " is not an object",
                     std::to_string(index));
  }
  auto it = obj.find("id");
  if (it == obj.end() || !it->is_string()) {
    throw GraphError(std::string(what) + " #" + std::to_string(index) + " has no string id",
                     std::to_string(index));
  }
  return it->get<std::string>();
}

}  // namespace

TerrainGraph load_graph(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(std::string("graph JSON parse error: ") + e.what(), "");
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array() ||
      !doc.contains("edges") || !doc["edges"].is_array()) {
    throw GraphError("graph JSON must be an object with 'nodes' and 'edges' arrays", "");
  }

  std::vector<Node> nodes;
  std::unordered_map<std::string, size_t> position;
  for (size_t i = 0; i < doc["nodes"].size(); ++i) {
    const json& jn = doc["nodes"][i];
    Node n;
    n.id = id_of(jn, "node", i);
    n.x = require_number(jn, "x", n.id);
    n.y = require_number(jn, "y", n.id);
    n.z = require_number(jn, "z", n.id);
    position.emplace(n.id, nodes.size());
    nodes.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  for (size_t i = 0; i < doc["edges"].size(); ++i) {
    const json& je = doc["edges"][i];
    Edge e;
    e.id = id_of(je, "edge", i);
    e.u = require_string(je, "u", e.id);
    e.v = require_string(je, "v", e.id);
    auto pu = position.find(e.u);
    auto pv = position.find(e.v);
    if (pu == position.end()) {
      throw GraphError("edge '" + e.id + "' references unknown node '" + e.u + "'", e.u);
    }
    if (pv == position.end()) {
      throw GraphError("edge '" + e.id + "' references unknown node '" + e.v + "'", e.v);
    }
    const Node& a = nodes[pu->second];
    const Node& b = nodes[pv->second];
    const double planar = std::hypot(b.x - a.x, b.y - a.y);
    const double dz = std::abs(b.z - a.z);
    if (je.contains("dist_m") && !je["dist_m"].is_null()) {
      e.dist_m = require_number(je, "dist_m", e.id);
    } else {
      e.dist_m = std::hypot(planar, dz);
    }
    if (je.contains("max_slope_deg") && !je["max_slope_deg"].is_null()) {
      e.max_slope_deg = require_number(je, "max_slope_deg", e.id);
    } else if (planar > 0.0) {
      e.max_slope_deg = std::atan(dz / planar) * 180.0 / std::numbers::pi;
    } else {
      throw GraphError("edge '" + e.id + "' has vertically aligned endpoints; give max_slope_deg",
                       e.id);
    }
    edges.push_back(std::move(e));
  }

  TerrainGraph graph(std::move(nodes), std::move(edges));
  if (options.require_connected && graph.node_count() > 0) {
    const auto labels = graph.component_labels();
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
      if (labels[v] != 0) {
        const std::string& id = graph.node(v).id;
        throw GraphError("graph is disconnected: node '" + id + "' is unreachable from '" +
                             graph.node(0).id + "'",
                         id);
      }
    }
  }
  return graph;
}

std::string serialize_graph(const TerrainGraph& graph) {
  json nodes = json::array();
  for (const Node& n : graph.nodes()) {
    nodes.push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}, {"z", n.z}});
  }
  json edges = json::array();
  for (const Edge& e : graph.edges()) {
    edges.push_back({{"id", e.id},
                     {"u", e.u},
                     {"v", e.v},
                     {"dist_m", e.dist_m},
                     {"max_slope_deg", e.max_slope_deg}});
  }
  json doc = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  return doc.dump(1) + "\n";
}

}  // namespace agv::terrain
