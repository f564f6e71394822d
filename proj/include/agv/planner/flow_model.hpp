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

#ifndef AGV_PLANNER_FLOW_MODEL_HPP_
#define AGV_PLANNER_FLOW_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agv/terrain/graph.hpp"
#include "agv/terrain/instance.hpp"

namespace agv::planner {

using terrain::ArcIndex;
using terrain::EdgeIndex;
using terrain::NodeIndex;

enum class SolverMode { kPco, kPcmco };

std::string_view solver_name(SolverMode mode);

struct SolverConfig {
  int capacity = 2;                       // N: max passes per waypoint
  std::optional<int64_t> node_budget;     // nullopt = unlimited
  SolverMode mode = SolverMode::kPco;

  void validate() const;
};

// Penalties are stored as integer thousandths.
inline constexpr int64_t kPenaltyScale = 1000;

// p in [0, 1] -> round-half-up(p * 1000), clamped to [0, 1000].
int64_t scale_penalty(double p);

struct ModelArc {
  NodeIndex from = terrain::kNoIndex;
  NodeIndex to = terrain::kNoIndex;
  EdgeIndex edge = terrain::kNoIndex;
  int64_t dist_mm = 0;
  int64_t penalty = 0;
};

// Degree rule for one vertex, in terms of selected out/in arc counts:
//   out - in == balance,  out <= cap_out,  in <= cap_in,  out >= min_out.
struct VertexRule {
  int balance = 0;
  int cap_out = 0;
  int cap_in = 0;
  int min_out = 0;
};

class InvalidInstance : public std::runtime_error {
 public:
  explicit InvalidInstance(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Binary flow model over the graph's directed arcs. Arc ids coincide with
// the graph's. The graph must outlive the model.
class FlowModel {
 public:
  const terrain::TerrainGraph& graph() const { return *graph_; }
  const std::vector<ModelArc>& arcs() const { return arcs_; }
  const ModelArc& arc(ArcIndex a) const { return arcs_[a]; }
  int32_t arc_count() const { return static_cast<int32_t>(arcs_.size()); }
  int32_t node_count() const { return graph_->node_count(); }

  NodeIndex start() const { return start_; }
  NodeIndex dest() const { return dest_; }
  int capacity() const { return capacity_; }
  // start == dest: the plan must be a closed tour through start.
  bool closed_tour() const { return start_ == dest_; }

  // Mandatory nodes other than start/dest, ascending.
  const std::vector<NodeIndex>& waypoints() const { return waypoints_; }
  bool is_waypoint(NodeIndex v) const { return waypoint_flag_[v] != 0; }

  const VertexRule& rule(NodeIndex v) const { return rules_[v]; }

  std::span<const ArcIndex> out_arcs(NodeIndex v) const { return graph_->out_arcs(v); }
  std::span<const ArcIndex> in_arcs(NodeIndex v) const { return graph_->in_arcs(v); }

  friend FlowModel build_model(const terrain::TerrainGraph& graph, const terrain::Instance& inst,
                               std::span<const double> edge_penalty, const SolverConfig& cfg);

 private:
  const terrain::TerrainGraph* graph_ = nullptr;
  std::vector<ModelArc> arcs_;
  NodeIndex start_ = terrain::kNoIndex;
  NodeIndex dest_ = terrain::kNoIndex;
  int capacity_ = 2;
  std::vector<NodeIndex> waypoints_;
  std::vector<char> waypoint_flag_;
  std::vector<VertexRule> rules_;
};

// `edge_penalty` is indexed by edge; an empty span means all-zero penalties.
// Throws InvalidInstance when validate_instance reports violations, and
// std::invalid_argument for a bad config or penalty vector.
FlowModel build_model(const terrain::TerrainGraph& graph, const terrain::Instance& inst,
                      std::span<const double> edge_penalty, const SolverConfig& cfg);

// Why an arc multiset is not an admissible plan, or nullopt if it is:
// every arc at most once, all vertex rules hold, and the arcs form one
// connected component containing the start.
std::optional<std::string> check_arc_set(const FlowModel& model, std::span<const ArcIndex> arcs);

}  // namespace agv::planner

#endif  // AGV_PLANNER_FLOW_MODEL_HPP_
